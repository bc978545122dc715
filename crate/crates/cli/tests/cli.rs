mod common;

use common::{replay, tgw, tgw_with_env, CorpusDir};

#[test]
fn check_exit_codes_over_the_corpus() {
    let c = CorpusDir::new();
    let failing = ["MB1MUT.tga", "MUT1.tga", "swap.tgm", "Z3_constant_presheaf.tgf"];
    for ext in ["tga", "tgm", "tgs", "tgf"] {
        for p in c.files(ext) {
            let file = p.file_name().unwrap().to_str().unwrap().to_string();
            let r = tgw(&["check", p.to_str().unwrap()]);
            let want = if failing.contains(&file.as_str()) { 1 } else { 0 };
            assert_eq!(r.code, want, "{file}: {}", r.stdout);
            assert_eq!(r.json["command"], "check");
        }
    }
}

#[test]
fn mut1_reports_the_commutativity_witness() {
    let c = CorpusDir::new();
    let r = tgw(&["check", &c.path("MUT1.tga")]);
    assert_eq!(r.code, 1);
    let check = r
        .checks()
        .find(|c| c["name"] == "semiring.MUT1.gamma_commutativity")
        .expect("commutativity check");
    assert_eq!(check["status"], "fail");
    assert_eq!(check["witness"]["labels"], serde_json::json!(["1", "g", "0", "g", "0"]));
}

#[test]
fn swap_is_not_a_morphism() {
    let c = CorpusDir::new();
    let r = tgw(&["check", &c.path("swap.tgm")]);
    assert_eq!(r.code, 1);
    assert!(r.failing().iter().any(|n| n.starts_with("morphism.swap.")), "{:?}", r.failing());
}

#[test]
fn angle_sequence_statuses() {
    let c = CorpusDir::new();
    let z3 = tgw(&["angle", &c.path("double.tgm"), "--les", "--nmax", "2"]);
    assert_eq!(z3.code, 1);
    let mut bad = z3.failing();
    bad.sort_unstable();
    assert_eq!(bad, ["les.composite_deltaf_1", "les.exact_X_0"]);
    assert_eq!(z3.json["artifacts"]["delta_available"], true);

    let b1 = tgw(&["angle", &c.path("diag.tgm"), "--les", "--nmax", "2"]);
    for n in 0..=2 {
        assert_eq!(b1.status(&format!("les.composite_fg_{n}")), Some("pass"));
        assert_eq!(b1.status(&format!("les.composite_gh_{n}")), Some("pass"));
    }
    assert!(b1.json["artifacts"]["delta_available"].is_boolean());

    let plain = tgw(&["angle", &c.path("diag.tgm")]);
    assert_eq!(plain.code, 0, "{}", plain.stdout);
}

#[test]
fn rotation_of_the_doubling_angle_breaks_one_composite() {
    let c = CorpusDir::new();
    let r = tgw(&["rotate", &c.path("double.tgm")]);
    assert_eq!(r.code, 1);
    assert_eq!(r.failing(), ["rotation1.composite_3_4"]);
    let r = tgw(&["rotate", &c.path("diag.tgm")]);
    assert_eq!(r.code, 0, "{:?}", r.failing());
}

#[test]
fn extend_reports_canonical_ladders() {
    let c = CorpusDir::new();
    for ladder in ["identity", "zero"] {
        let r = tgw(&["extend", &c.path("double.tgm"), "--ladder", ladder]);
        assert_eq!(r.code, 0, "{ladder}: {}", r.stdout);
        assert_eq!(r.json["artifacts"]["mode"], "canonical");
        assert_eq!(r.status("matches_ladder"), Some("pass"));
    }
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.tga");
    std::fs::write(
        &p,
        "semiring B\nelements: 0 1\nzero: 0\ngamma: g\nadd: 0 1 1 1\nternary: 0 0 0 0 0 0 0\n",
    )
    .unwrap();
    let r = tgw(&["check", p.to_str().unwrap()]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    assert_eq!(r.json["error"]["kind"], "parse");
    assert_eq!(r.json["error"]["line"], 6);
    assert!(r.json["error"]["column"].is_u64());
}

#[test]
fn missing_file_and_bad_usage_exit_two() {
    let r = tgw(&["check", "/nonexistent/x.tga"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["error"]["kind"], "input");
    let r = tgw(&["cech"]);
    assert_eq!(r.code, 2);
    let r = tgw(&["frobnicate"]);
    assert_eq!(r.code, 2);
}

#[test]
fn exhausted_budget_exits_two() {
    let c = CorpusDir::new();
    let r = tgw(&["enumerate", "morphisms", &c.path("MB1xMB1.tga"), "--search-budget", "3"]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    assert_eq!(r.json["error"]["kind"], "budget");
}

#[test]
fn failing_inputs_stop_before_the_command() {
    let c = CorpusDir::new();
    let r = tgw(&["spec", &c.path("MUT1.tga")]);
    assert_eq!(r.code, 1);
    assert!(r.failing().iter().all(|n| n.starts_with("input.semiring.MUT1.")));
    assert!(r.json["artifacts"]["stopped"].is_string());
    let r = tgw(&["spec", &c.path("MUT1.tga"), "--no-check"]);
    assert_ne!(r.code, 2, "{}", r.stdout);
}

#[test]
fn corpus_round_trips_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c");
    let r = tgw(&["corpus", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let files = r.json["artifacts"]["files"].as_object().unwrap();
    assert!(files.len() >= 20);
    for (name, text) in files {
        assert_eq!(std::fs::read_to_string(out.join(name)).unwrap(), text.as_str().unwrap());
    }
    assert_eq!(tgw(&["corpus"]).stdout, r.stdout);
}

#[test]
fn several_files_share_one_namespace() {
    let c = CorpusDir::new();
    let r = tgw(&[
        "curry-check",
        &c.path("MB1.tga"),
        &c.path("ZB1.tga"),
        "--left",
        "MB1",
        "--right",
        "MB1",
        "--target",
        "ZB1",
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn reports_are_identical_across_runs_and_thread_counts() {
    let c = CorpusDir::new();
    let runs: [Vec<String>; 4] = [
        vec!["barr".into()],
        vec!["check".into(), c.path("MUT1.tga")],
        vec!["angle".into(), c.path("double.tgm"), "--les".into()],
        vec!["spec".into(), c.path("Z3.tga")],
    ];
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let one = tgw_with_env(&args, &[("RAYON_NUM_THREADS", "1")]);
        let four = tgw_with_env(&args, &[("RAYON_NUM_THREADS", "4")]);
        let again = tgw_with_env(&args, &[("RAYON_NUM_THREADS", "4")]);
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(four.stdout, again.stdout, "{args:?}");
    }
}

#[test]
fn every_failing_witness_replays() {
    let c = CorpusDir::new();
    let cases: Vec<Vec<String>> = vec![
        vec!["check".into(), c.path("MUT1.tga")],
        vec!["check".into(), c.path("MB1MUT.tga")],
        vec!["check".into(), c.path("swap.tgm")],
        vec!["check".into(), c.path("Z3_constant_presheaf.tgf")],
        vec!["sheaf-check".into(), c.path("Z3_constant_presheaf.tgf")],
        vec!["angle".into(), c.path("double.tgm"), "--les".into()],
        vec!["angle".into(), c.path("diag.tgm"), "--les".into()],
        vec!["rotate".into(), c.path("double.tgm")],
        vec!["spec".into(), c.path("MUT1.tga")],
    ];
    let mut replayed = 0;
    for args in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let r = tgw(&args);
        assert_eq!(r.code, 1, "{args:?}");
        for (name, verdict) in replay(&args, &r.json) {
            assert_eq!(verdict, Some(true), "{args:?} {name}");
            replayed += 1;
        }
    }
    assert!(replayed >= 10, "{replayed}");
}

mod round_trip {
    use std::sync::Arc;

    use proptest::prelude::*;
    use tgw_cli::format::Document;
    use tgw_core::corpus;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mutated_tables_survive_the_text_format(
            k in 0usize..4,
            pos in any::<prop::sample::Index>(),
            val in any::<prop::sample::Index>(),
        ) {
            let s = vec![corpus::b1(), corpus::z3(), corpus::b1_squared(), corpus::b1_two_gammas()].swap_remove(k);
            let len = s.table().len();
            let mut at = pos.index(len);
            let (t, g) = (s.size(), s.gamma_size());
            let mut idx = [0; 5];
            for (slot, radix) in [(4, t), (3, g), (2, t), (1, g), (0, t)] {
                idx[slot] = at % radix;
                at /= radix;
            }
            let s = Arc::new(s.with_entry(idx, val.index(t)).unwrap());
            let mut doc = Document::default();
            doc.add_semiring(&s).unwrap();
            let text = doc.serialize();
            let back = Document::parse(&text).unwrap();
            prop_assert_eq!(back.serialize(), text);
            let again = &back.semirings[s.name()];
            prop_assert_eq!(again.table(), s.table());
            prop_assert_eq!(again.zero(), s.zero());
        }
    }
}
