//! Subcommand execution and report assembly.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use tgw_core::angulation::{
    build_3_angle, extend_morphism, gamma_action, gamma_endomorphisms, long_exact_sequence, rotate, Extension,
    ExtensionMode, ThreeAngle,
};
use tgw_core::exactness::{check_barr_exactness, BarrCorpus};
use tgw_core::monoidal::{curry_check, internal_hom, tensor};
use tgw_core::simplicial::{
    check_simplicial, check_simplicial_morphism, homology, is_fibration, is_kan, is_weak_equivalence, path_object,
    SimplicialModule, SimplicialMorphism,
};
use tgw_core::spectrum::{cech_cohomology, check_sheaf, check_spec, spec, CechValue, IdealConvention, Primality, TriadicSheaf};
use tgw_core::{
    check_module, check_morphism, check_semiring, corpus, enumerate_modules, enumerate_morphisms, enumerate_semirings,
    semiring_isomorphism, AxiomReport, Check, EnumerationMode, Error, ModuleMorphism, Status, TernaryGammaModule,
    TernaryGammaSemiring, Tier, Witness, WorkbenchConfig,
};

use crate::args::{Command, EnumerateWhat, Ladder, Mode, PrimalityArg};
use crate::corpus_files::corpus_files;
use crate::format::Document;

/// The JSON document printed for every run.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub subject: String,
    pub checks: Vec<Check>,
    pub artifacts: BTreeMap<String, Value>,
}

impl Report {
    fn from_axioms(command: &str, config: Value, r: AxiomReport) -> Self {
        Report {
            command: command.to_string(),
            config,
            subject: r.subject,
            checks: r.checks,
            artifacts: r.artifacts.into_iter().collect(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// A run that could not produce findings: bad usage, unreadable or
/// malformed input, or an exhausted budget.
#[derive(Debug)]
pub struct Failure {
    pub command: String,
    pub config: Value,
    pub error: Error,
}

impl Failure {
    pub fn to_json(&self) -> String {
        let (kind, line, column) = match &self.error {
            Error::Parse { line, column, .. } => ("parse", Some(*line), Some(*column)),
            Error::SearchSpaceTooLarge { .. } | Error::ElementBudget { .. } | Error::SaturationUnbounded(_) => {
                ("budget", None, None)
            }
            Error::Precondition(_) | Error::Unsupported(_) => ("usage", None, None),
            _ => ("input", None, None),
        };
        let v = json!({
            "command": self.command,
            "config": self.config,
            "error": {"kind": kind, "message": self.error.to_string(), "line": line, "column": column},
        });
        let mut s = serde_json::to_string_pretty(&v).expect("error serializes");
        s.push('\n');
        s
    }
}

pub type Outcome = std::result::Result<Report, Failure>;

/// Exit code and standard output for a run.
pub fn render(outcome: &Outcome) -> (i32, String) {
    match outcome {
        Ok(r) => (r.exit_code(), r.to_json()),
        Err(f) => (2, f.to_json()),
    }
}

fn config_json(cfg: &WorkbenchConfig, checked: bool) -> Value {
    let mut v = cfg.to_json();
    v["check_inputs"] = Value::Bool(checked);
    v
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub fn load(paths: &[impl AsRef<Path>]) -> tgw_core::Result<Document> {
    let mut texts = Vec::new();
    for p in paths {
        let p = p.as_ref();
        let text = std::fs::read_to_string(p)
            .map_err(|e| Error::Malformed { what: "input".into(), detail: format!("cannot read {}: {e}", p.display()) })?;
        texts.push((p.display().to_string(), text));
    }
    let refs: Vec<(&str, &str)> = texts.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Document::parse_files(&refs)
}

pub fn pick<'a, T>(map: &'a BTreeMap<String, T>, name: Option<&str>, what: &str) -> tgw_core::Result<&'a T> {
    match name {
        Some(n) => map.get(n).ok_or_else(|| usage(format!("no {what} named `{n}` in the inputs"))),
        None => {
            let mut it = map.values();
            match (it.next(), it.next()) {
                (Some(v), None) => Ok(v),
                (None, _) => Err(usage(format!("the inputs define no {what}"))),
                _ => Err(usage(format!(
                    "the inputs define several {what}s ({}); name one",
                    map.keys().cloned().collect::<Vec<_>>().join(", ")
                ))),
            }
        }
    }
}

/// A simplicial object by name; a module stands for its constant object.
pub fn object(doc: &Document, name: Option<&str>, truncation: usize) -> tgw_core::Result<Arc<SimplicialModule>> {
    if let Some(n) = name {
        if let Some(x) = doc.simplicial.get(n) {
            return Ok(x.clone());
        }
        if let Some(m) = doc.modules.get(n) {
            return Ok(Arc::new(SimplicialModule::constant(m.clone(), truncation)));
        }
        return Err(usage(format!("no simplicial object or module named `{n}`")));
    }
    if !doc.simplicial.is_empty() {
        return pick(&doc.simplicial, None, "simplicial object").cloned();
    }
    let m = pick(&doc.modules, None, "module")?;
    Ok(Arc::new(SimplicialModule::constant(m.clone(), truncation)))
}

/// A simplicial map by name; a module morphism stands for the same map at
/// every level between constant objects.
pub fn map(doc: &Document, name: Option<&str>, truncation: usize) -> tgw_core::Result<SimplicialMorphism> {
    if let Some(n) = name {
        if let Some(f) = doc.simplicial_maps.get(n) {
            return Ok(f.clone());
        }
        if let Some(f) = doc.morphisms.get(n) {
            return Ok(corpus::constant_map(f, truncation));
        }
        return Err(usage(format!("no simplicial map or morphism named `{n}`")));
    }
    if !doc.simplicial_maps.is_empty() {
        return pick(&doc.simplicial_maps, None, "simplicial map").cloned();
    }
    let f = pick(&doc.morphisms, None, "morphism")?;
    Ok(corpus::constant_map(f, truncation))
}

/// Axiom checks for every block, with names `KIND.NAME.CHECK`. Sheaves are
/// included only when asked.
pub fn validate(doc: &Document, cfg: &WorkbenchConfig, sheaves: bool) -> tgw_core::Result<AxiomReport> {
    let mut report = AxiomReport::new("inputs", cfg.strict_zero);
    for (name, s) in &doc.semirings {
        report.absorb(&format!("semiring.{name}"), check_semiring(s, cfg.strict_zero));
    }
    for (name, m) in &doc.modules {
        match check_module(m, cfg.strict_zero) {
            Ok(r) => report.absorb(&format!("module.{name}"), r),
            Err(Error::Precondition(why)) => {
                report.push(Check::unavailable(format!("module.{name}.axioms"), Tier::Axiom));
                report.artifact(format!("module.{name}.unavailable"), why);
            }
            Err(e) => return Err(e),
        }
    }
    for (name, f) in &doc.morphisms {
        report.absorb(&format!("morphism.{name}"), check_morphism(f));
    }
    for (name, x) in &doc.simplicial {
        report.absorb(&format!("simplicial.{name}"), check_simplicial(x));
    }
    for (name, f) in &doc.simplicial_maps {
        report.absorb(&format!("simplicial-map.{name}"), check_simplicial_morphism(f));
    }
    if sheaves {
        for (name, f) in &doc.sheaves {
            report.absorb(&format!("sheaf.{name}"), check_sheaf(f, cfg)?);
        }
    }
    Ok(report)
}

fn subject_of(paths: &[std::path::PathBuf]) -> String {
    paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(" ")
}

/// Runs a parsed command line.
pub fn run(cmd: &Command) -> Outcome {
    let common = cmd.common();
    let cfg = common.config();
    let config = config_json(&cfg, !common.no_check);
    let name = cmd.name();
    let fail = |error: Error| Failure {
        command: name.to_string(),
        config: config.clone(),
        error,
    };
    cfg.validate().map_err(fail)?;
    let paths = common.paths();
    let doc = load(&paths).map_err(fail)?;
    if let Command::Check { .. } = cmd {
        if doc.is_empty() {
            return Err(fail(usage("nothing to check: give at least one input file")));
        }
        let mut r = validate(&doc, &cfg, true).map_err(fail)?;
        r.subject = subject_of(&paths);
        return Ok(Report::from_axioms(name, config, r));
    }
    if !common.no_check && !doc.is_empty() {
        let r = validate(&doc, &cfg, false).map_err(fail)?;
        if !r.passed() {
            let mut r = r;
            r.subject = subject_of(&paths);
            let mut out = Report::from_axioms(name, config, r);
            out.checks.iter_mut().for_each(|c| c.name = format!("input.{}", c.name));
            out.artifacts.insert("stopped".into(), json!("an input fails its axioms"));
            return Ok(out);
        }
    }
    let r = execute(cmd, &doc, &cfg).map_err(fail)?;
    Ok(Report::from_axioms(name, config, r))
}

fn semiring_of(doc: &Document, name: Option<&str>) -> tgw_core::Result<Arc<TernaryGammaSemiring>> {
    pick(&doc.semirings, name, "semiring").cloned()
}

fn two_modules(
    doc: &Document,
    a: Option<&str>,
    b: Option<&str>,
) -> tgw_core::Result<(Arc<TernaryGammaModule>, Arc<TernaryGammaModule>)> {
    match (a, b) {
        (None, None) => {
            let m = pick(&doc.modules, None, "module")?.clone();
            Ok((m.clone(), m))
        }
        _ => {
            let get = |n: Option<&str>| -> tgw_core::Result<Arc<TernaryGammaModule>> {
                let n = n.ok_or_else(|| usage("name both modules"))?;
                pick(&doc.modules, Some(n), "module").cloned()
            };
            Ok((get(a)?, get(b)?))
        }
    }
}

fn token(name: &str) -> String {
    name.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect()
}

fn text_of_module(m: &Arc<TernaryGammaModule>, name: &str) -> tgw_core::Result<String> {
    let mut doc = Document::default();
    doc.add_module(&Arc::new(m.materialize().renamed(token(name))))?;
    Ok(doc.serialize())
}

pub fn angle_of(doc: &Document, map_name: Option<&str>, cfg: &WorkbenchConfig) -> tgw_core::Result<ThreeAngle> {
    let f = map(doc, map_name, cfg.truncation)?;
    build_3_angle(&f, cfg)
}

fn default_nmax(nmax: Option<usize>, cfg: &WorkbenchConfig) -> tgw_core::Result<usize> {
    match nmax {
        Some(n) => Ok(n),
        None => cfg
            .truncation
            .checked_sub(1)
            .ok_or_else(|| usage("the sequence needs truncation at least 1")),
    }
}

fn execute(cmd: &Command, doc: &Document, cfg: &WorkbenchConfig) -> tgw_core::Result<AxiomReport> {
    let strict = cfg.strict_zero;
    match cmd {
        Command::Check { .. } => unreachable!("handled by run"),
        Command::Enumerate {
            what,
            size,
            gammas,
            mode,
            count,
            semiring,
            source,
            target,
            ..
        } => match what {
            EnumerateWhat::Semirings => {
                let m = match mode {
                    Mode::Exhaustive => EnumerationMode::Exhaustive,
                    Mode::Sampled => EnumerationMode::Sampled { seed: cfg.seed, count: *count },
                };
                let found = enumerate_semirings(*size, *gammas, m, strict)?;
                let mut r = AxiomReport::new(format!("semirings of size {size} with {gammas} parameter(s)"), strict);
                let mut text = Document::default();
                for (i, s) in found.iter().enumerate() {
                    let s = Arc::new(s.clone().renamed(format!("S{i}")));
                    r.absorb(&format!("S{i}"), check_semiring(&s, strict));
                    text.add_semiring(&s)?;
                }
                if *mode == Mode::Exhaustive {
                    let clash = (0..found.len())
                        .flat_map(|i| (i + 1..found.len()).map(move |j| (i, j)))
                        .find(|&(i, j)| semiring_isomorphism(&found[i], &found[j]).is_some());
                    r.push(Check::from_outcome(
                        "pairwise_non_isomorphic",
                        Tier::Structural,
                        clash.map(|(i, j)| Witness::unlabeled(vec![i, j])),
                    ));
                }
                r.artifact("count", found.len());
                r.artifact("text", text.serialize());
                Ok(r)
            }
            EnumerateWhat::Modules => {
                let s = semiring_of(doc, semiring.as_deref())?;
                let found = enumerate_modules(&s, *size, strict)?;
                let mut r = AxiomReport::new(format!("modules of size {size} over {}", s.name()), strict);
                let mut text = Document::default();
                for (i, m) in found.into_iter().enumerate() {
                    let m = Arc::new(m.renamed(format!("M{i}")));
                    r.absorb(&format!("M{i}"), check_module(&m, strict)?);
                    text.add_module(&m)?;
                }
                r.artifact("count", text.modules.len());
                r.artifact("text", text.serialize());
                Ok(r)
            }
            EnumerateWhat::Morphisms => {
                let (a, b) = two_modules(doc, source.as_deref(), target.as_deref())?;
                let found = enumerate_morphisms(&a, &b, cfg.search_budget)?;
                let mut r = AxiomReport::new(format!("Hom({},{})", a.name(), b.name()), strict);
                for f in &found {
                    r.absorb(f.name(), check_morphism(f));
                }
                r.artifact("count", found.len());
                r.artifact("tables", found.iter().map(|f| f.table().to_vec()).collect::<Vec<_>>());
                Ok(r)
            }
        },
        Command::Hom { source, target, .. } => {
            let (a, b) = two_modules(doc, source.as_deref(), target.as_deref())?;
            let h = internal_hom(&a, &b, strict, cfg.search_budget)?;
            let mut r = h.report;
            r.artifact("tables", &h.morphisms);
            if let Some(m) = &h.module {
                r.artifact("text", text_of_module(m, &format!("Hom({},{})", a.name(), b.name()))?);
            }
            Ok(r)
        }
        Command::Tensor { left, right, .. } => {
            let (a, b) = two_modules(doc, left.as_deref(), right.as_deref())?;
            let t = tensor(&a, &b, cfg.element_budget, cfg.search_budget.min(usize::MAX as u64) as usize)?;
            let name = format!("{}(x){}", a.name(), b.name());
            let mut r = AxiomReport::new(&name, strict);
            r.absorb("module", check_module(&t.module, strict)?);
            r.artifact("size", t.module.size());
            r.artifact("canonical", &t.canonical.table);
            r.artifact("text", text_of_module(&t.module, &name)?);
            Ok(r)
        }
        Command::CurryCheck { left, right, target, .. } => {
            let (a, b) = two_modules(doc, left.as_deref(), right.as_deref())?;
            let p = match target {
                Some(n) => pick(&doc.modules, Some(n), "module")?.clone(),
                None => b.clone(),
            };
            let t = tensor(&a, &b, cfg.element_budget, cfg.search_budget.min(usize::MAX as u64) as usize)?;
            curry_check(&t, &p, cfg.search_budget)
        }
        Command::Barr { modules, .. } => {
            let chosen: Vec<Arc<TernaryGammaModule>> = if !modules.is_empty() {
                modules
                    .iter()
                    .map(|n| pick(&doc.modules, Some(n), "module").cloned())
                    .collect::<tgw_core::Result<_>>()?
            } else if !doc.modules.is_empty() {
                doc.modules.values().cloned().collect()
            } else {
                corpus::small_b1_modules().into_iter().map(Arc::new).collect()
            };
            let names: Vec<String> = chosen.iter().map(|m| m.name().to_string()).collect();
            let bc = BarrCorpus::with_all_morphisms(chosen, cfg.search_budget)?;
            let mut r = check_barr_exactness(&bc, cfg.element_budget, cfg.search_budget);
            r.artifact("modules", names);
            r.artifact("morphisms", bc.morphisms.len());
            Ok(r)
        }
        Command::Homology { object: o, .. } => {
            let x = object(doc, o.as_deref(), cfg.truncation)?;
            let mut r = check_simplicial(&x);
            r.subject = format!("H_*({})", x.name());
            if !r.passed() {
                return Ok(r);
            }
            let h = homology(&x, strict)?;
            let degrees: Vec<Value> = h
                .degrees
                .iter()
                .map(|d| {
                    json!({
                        "degree": d.degree,
                        "size": d.size(),
                        "cycles": d.cycle_members.len(),
                        "boundaries": d.boundaries.len(),
                        "reliable": d.reliable,
                    })
                })
                .collect();
            r.artifact("degrees", degrees);
            Ok(r)
        }
        Command::Weq { map: m, .. } => {
            let f = map(doc, m.as_deref(), cfg.truncation)?;
            let w = is_weak_equivalence(&f, strict)?;
            let mut r = w.report;
            r.artifact("holds", w.holds);
            Ok(r)
        }
        Command::Fibration { map: m, object: o, .. } => {
            let fib = match o {
                Some(_) => is_kan(&object(doc, o.as_deref(), cfg.truncation)?, cfg.search_budget)?,
                None => is_fibration(&map(doc, m.as_deref(), cfg.truncation)?, cfg.search_budget)?,
            };
            let mut r = fib.report;
            r.artifact("vacuous", fib.vacuous);
            Ok(r)
        }
        Command::PathObject { object: o, .. } => {
            let x = object(doc, o.as_deref(), cfg.truncation)?;
            let p = path_object(&x, cfg)?;
            let mut r = p.certification;
            r.artifact("path_sizes", p.object.levels().iter().map(|l| l.size()).collect::<Vec<_>>());
            Ok(r)
        }
        Command::Angle { map: m, les, nmax, .. } => {
            let a = angle_of(doc, m.as_deref(), cfg)?;
            let mut r = a.certificates.clone();
            r.artifact("object_sizes", sizes(&a));
            if *les {
                let n = default_nmax(*nmax, cfg)?;
                let seq = long_exact_sequence(&a, n, cfg)?;
                r.artifact("delta_available", seq.delta_available());
                r.absorb("les", seq.report);
            }
            Ok(r)
        }
        Command::Rotate { map: m, times, .. } => {
            let mut a = angle_of(doc, m.as_deref(), cfg)?;
            let mut r = AxiomReport::new(a.certificates.subject.clone(), strict);
            r.absorb("base", a.certificates.clone());
            for k in 1..=*times {
                a = rotate(&a, cfg)?;
                r.absorb(&format!("rotation{k}"), a.certificates.clone());
            }
            r.artifact("object_sizes", sizes(&a));
            Ok(r)
        }
        Command::Extend { map: m, ladder, other, u, v, .. } => {
            let a = angle_of(doc, m.as_deref(), cfg)?;
            let (b, uu, vv, expected) = match other {
                Some(o) => {
                    let b = angle_of(doc, Some(o), cfg)?;
                    let uu = map(doc, u.as_deref(), cfg.truncation)?;
                    let vv = map(doc, v.as_deref(), cfg.truncation)?;
                    (b, uu, vv, None)
                }
                None => {
                    let (x, y) = (a.objects[0].clone(), a.objects[1].clone());
                    let (uu, vv) = match ladder {
                        Ladder::Identity => (SimplicialMorphism::identity(x), SimplicialMorphism::identity(y)),
                        Ladder::Zero => (SimplicialMorphism::zero(x.clone(), x)?, SimplicialMorphism::zero(y.clone(), y)?),
                    };
                    (a.clone(), uu, vv, Some(*ladder))
                }
            };
            let ext = extend_morphism(&a, &b, &uu, &vv, cfg)?;
            let mut r = AxiomReport::new(format!("extend({}, {})", uu.name, vv.name), strict);
            match ext {
                Extension::Found { phi, psi, mode, report } => {
                    r.push(Check::pass("extension_found", Tier::Structural));
                    r.absorb("squares", report);
                    r.artifact("mode", if mode == ExtensionMode::Canonical { "canonical" } else { "searched" });
                    if let Some(l) = expected {
                        let (want_phi, want_psi) = match l {
                            Ladder::Identity => (
                                SimplicialMorphism::identity(a.objects[2].clone()),
                                SimplicialMorphism::identity(a.objects[3].clone()),
                            ),
                            Ladder::Zero => (
                                SimplicialMorphism::zero(a.objects[2].clone(), a.objects[2].clone())?,
                                SimplicialMorphism::zero(a.objects[3].clone(), a.objects[3].clone())?,
                            ),
                        };
                        let off = first_difference(&phi, &want_phi)
                            .map(|(n, x)| vec![0, n, x])
                            .or_else(|| first_difference(&psi, &want_psi).map(|(n, x)| vec![1, n, x]));
                        r.push(Check::from_outcome("matches_ladder", Tier::Structural, off.map(Witness::unlabeled)));
                    }
                }
                Extension::NotFound { searched, exhaustive } => {
                    r.push(Check::fail(
                        "extension_found",
                        Tier::Structural,
                        Witness::unlabeled(vec![searched as usize, exhaustive as usize]),
                    ));
                }
            }
            Ok(r)
        }
        Command::GammaEnd { semiring, map: m, nmax, .. } => {
            let with_angle = m.is_some() || (semiring.is_none() && (!doc.morphisms.is_empty() || !doc.simplicial_maps.is_empty()));
            let angle = if with_angle { Some(angle_of(doc, m.as_deref(), cfg)?) } else { None };
            let s = match (semiring, &angle) {
                (Some(n), _) => semiring_of(doc, Some(n))?,
                (None, Some(a)) => a.objects[0].semiring().clone(),
                (None, None) => semiring_of(doc, None)?,
            };
            let (monoid, mut r) = gamma_endomorphisms(&s);
            r.artifact("elements", &monoid.elements);
            r.artifact("composition", &monoid.composition);
            if let Some(a) = angle {
                let n = default_nmax(*nmax, cfg)?;
                r.absorb("action", gamma_action(&a, &monoid, n, cfg)?);
            }
            Ok(r)
        }
        Command::Spec { semiring, primality, improper_primes, proper_ideals, .. } => {
            let s = semiring_of(doc, semiring.as_deref())?;
            let conv = IdealConvention {
                primality: match primality {
                    PrimalityArg::Any => Primality::AnySlot,
                    PrimalityArg::Outer => Primality::OuterSlots,
                },
                improper_ideals: !proper_ideals,
                improper_primes: *improper_primes,
                ..IdealConvention::default()
            };
            let sp = spec(&s, &conv)?;
            let mut r = check_spec(&sp);
            r.artifact("ideals", sp.ideals.iter().map(|i| i.label()).collect::<Vec<_>>());
            Ok(r)
        }
        Command::SheafCheck { sheaf, .. } => {
            let f = pick(&doc.sheaves, sheaf.as_deref(), "sheaf")?;
            check_sheaf(f, cfg)
        }
        Command::Cech { sheaf, cover, degree, .. } => {
            let f = pick(&doc.sheaves, sheaf.as_deref(), "sheaf")?;
            let members = cover.iter().map(|c| open_index(f, c)).collect::<tgw_core::Result<Vec<_>>>()?;
            let h = cech_cohomology(f, &members, *degree, cfg)?;
            let mut r = h.report;
            if let CechValue::Computed(m) = &h.value {
                r.artifact("text", text_of_module(&m.module, &format!("H{degree}"))?);
            }
            Ok(r)
        }
        Command::Corpus { out, .. } => {
            let files = corpus_files(cfg)?;
            let mut r = AxiomReport::new("built-in corpus", strict);
            for (file, text) in &files {
                let again = Document::parse(text).map(|d| d.serialize());
                let same = matches!(&again, Ok(t) if t == text);
                r.push(Check::from_outcome(
                    format!("round_trip.{file}"),
                    Tier::Structural,
                    (!same).then(|| Witness::new(vec![0], vec![file.clone()])),
                ));
            }
            if let Some(dir) = out {
                std::fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
                for (file, text) in &files {
                    let p = dir.join(file);
                    std::fs::write(&p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
                }
            }
            r.artifact("files", files.into_iter().collect::<BTreeMap<_, _>>());
            Ok(r)
        }
    }
}

fn sizes(a: &ThreeAngle) -> Vec<Vec<usize>> {
    a.objects.iter().map(|o| o.levels().iter().map(|l| l.size()).collect()).collect()
}

fn first_difference(f: &SimplicialMorphism, g: &SimplicialMorphism) -> Option<(usize, usize)> {
    f.levels.iter().zip(&g.levels).enumerate().find_map(|(n, (a, b)): (usize, (&ModuleMorphism, &ModuleMorphism))| {
        a.table().iter().zip(b.table()).position(|(x, y)| x != y).map(|x| (n, x))
    })
}

pub fn open_index(f: &TriadicSheaf, token: &str) -> tgw_core::Result<usize> {
    let inner = token
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| usage(format!("a cover member looks like {{p,q}}, found `{token}`")))?;
    let mut pts = Vec::new();
    if !inner.is_empty() {
        for p in inner.split(',') {
            let i = f
                .space
                .points
                .iter()
                .position(|q| q == p.trim())
                .ok_or_else(|| usage(format!("unknown point `{p}`")))?;
            pts.push(i);
        }
    }
    pts.sort_unstable();
    pts.dedup();
    f.space.index_of(&pts).ok_or_else(|| usage(format!("`{token}` is not open")))
}
