use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use tgw_core::{
    check_module, check_morphism, check_semiring, corpus, enumerate_morphisms, module_violation, semiring_isomorphism,
    semiring_violation, FiniteCommutativeMonoid, Status, TernaryGammaModule, TernaryGammaSemiring,
};

fn bases() -> Vec<TernaryGammaSemiring> {
    vec![corpus::b1(), corpus::z3(), corpus::b1_squared(), corpus::b1_two_gammas(), corpus::mut1()]
}

/// The same semiring with element `x` renamed `sigma[x]`.
fn relabel(s: &TernaryGammaSemiring, sigma: &[usize]) -> TernaryGammaSemiring {
    let t = s.size();
    let mut inv = vec![0; t];
    for (x, &y) in sigma.iter().enumerate() {
        inv[y] = x;
    }
    let add: Vec<usize> = (0..t * t).map(|k| sigma[s.add(inv[k / t], inv[k % t])]).collect();
    let carrier = FiniteCommutativeMonoid::new(t, sigma[s.zero()], add, None).unwrap();
    TernaryGammaSemiring::from_fn(s.name(), carrier, s.gamma_names().to_vec(), |a, al, b, be, c| {
        sigma[s.mul(inv[a], al, inv[b], be, inv[c])]
    })
    .unwrap()
}

fn statuses(s: &TernaryGammaSemiring) -> Vec<(String, Status)> {
    check_semiring(s, true).status_vector()
}

/// The semiring laws decided by plain loops, one verdict per law.
fn law_oracle(s: &TernaryGammaSemiring) -> Vec<(&'static str, bool)> {
    let t = 0..s.size();
    let g = 0..s.gamma_size();
    let m = |a, al, b, be, c| s.mul(a, al, b, be, c);
    let mut assoc = true;
    let mut dist = [true; 3];
    let mut comm = true;
    let mut absorb = true;
    for a in t.clone() {
        for al in g.clone() {
            for b in t.clone() {
                for be in g.clone() {
                    for c in t.clone() {
                        let v = m(a, al, b, be, c);
                        comm &= v == m(c, be, b, al, a);
                        if [a, b, c].contains(&s.zero()) {
                            absorb &= v == s.zero();
                        }
                        for x in t.clone() {
                            dist[0] &= m(s.add(a, x), al, b, be, c) == s.add(v, m(x, al, b, be, c));
                            dist[1] &= m(a, al, s.add(b, x), be, c) == s.add(v, m(a, al, x, be, c));
                            dist[2] &= m(a, al, b, be, s.add(c, x)) == s.add(v, m(a, al, b, be, x));
                        }
                        for ga in g.clone() {
                            for d in t.clone() {
                                for de in g.clone() {
                                    for e in t.clone() {
                                        let left = m(v, ga, d, de, e);
                                        assoc &= left == m(a, al, m(b, be, c, ga, d), de, e)
                                            && left == m(a, al, b, be, m(c, ga, d, de, e));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    vec![
        ("triadic_associativity", assoc),
        ("distributivity_first", dist[0]),
        ("distributivity_second", dist[1]),
        ("distributivity_third", dist[2]),
        ("gamma_commutativity", comm),
        ("zero_absorption", absorb),
    ]
}

fn mutated() -> impl Strategy<Value = TernaryGammaSemiring> {
    (0..bases().len(), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(k, pos, val)| {
        let s = bases().swap_remove(k);
        let (t, g) = (s.size(), s.gamma_size());
        let mut at = pos.index(t * g * t * g * t);
        let mut idx = [0; 5];
        for (slot, radix) in [(4, t), (3, g), (2, t), (1, g), (0, t)] {
            idx[slot] = at % radix;
            at /= radix;
        }
        s.with_entry(idx, val.index(t)).unwrap()
    })
}

#[test]
fn corpus_semirings_pass_except_mut1() {
    for s in bases() {
        let r = check_semiring(&s, true);
        assert_eq!(r.passed(), s.name() != "MUT1", "{}", s.name());
    }
}

#[test]
fn oracle_agrees_on_the_corpus() {
    for s in bases() {
        let r = check_semiring(&s, true);
        for (law, holds) in law_oracle(&s) {
            assert_eq!(r.check(law).unwrap().status == Status::Pass, holds, "{} {law}", s.name());
        }
    }
}

#[test]
fn morphism_enumeration_matches_brute_force() {
    let mut modules: Vec<Arc<TernaryGammaModule>> = corpus::small_b1_modules().into_iter().map(Arc::new).collect();
    modules.push(Arc::new(corpus::mb1_squared()));
    for a in &modules {
        for b in &modules {
            let found = enumerate_morphisms(a, b, 1 << 20).unwrap();
            let tables: BTreeSet<Vec<usize>> = found.iter().map(|f| f.table().to_vec()).collect();
            assert_eq!(tables.len(), found.len());
            let mut brute = BTreeSet::new();
            let mut t = vec![0; a.size()];
            loop {
                let f = tgw_core::ModuleMorphism::new("f", a.clone(), b.clone(), t.clone()).unwrap();
                if check_morphism(&f).passed() {
                    brute.insert(t.clone());
                }
                let Some(i) = (0..t.len()).rev().find(|&i| t[i] + 1 < b.size()) else { break };
                t[i] += 1;
                t[i + 1..].iter_mut().for_each(|x| *x = 0);
            }
            assert_eq!(tables, brute, "{} -> {}", a.name(), b.name());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_survive_relabeling(
        (s, sigma) in mutated().prop_flat_map(|s| {
            let t = s.size();
            (Just(s), Just((0..t).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let r = relabel(&s, &sigma);
        prop_assert_eq!(statuses(&s), statuses(&r));
        if check_semiring(&s, true).passed() {
            prop_assert!(semiring_isomorphism(&s, &r).is_some());
        }
    }

    #[test]
    fn semiring_witnesses_replay(s in mutated()) {
        let r = check_semiring(&s, true);
        for c in r.failures() {
            let w = c.witness.as_ref().unwrap();
            prop_assert!(semiring_violation(&s, &c.name, &w.values), "{}", c.name);
        }
        for (law, holds) in law_oracle(&s) {
            prop_assert_eq!(r.check(law).unwrap().status == Status::Pass, holds, "{}", law);
        }
    }

    #[test]
    fn module_witnesses_replay(k in 0usize..3, pos in any::<prop::sample::Index>(), val in any::<prop::sample::Index>()) {
        let m = vec![corpus::mb1(), corpus::mz3(), corpus::mb1_squared()].swap_remove(k);
        let s = m.semiring().clone();
        let (t, g, n) = (s.size(), s.gamma_size(), m.size());
        let mut at = pos.index(t * g * n * g * t);
        let mut idx = [0; 5];
        for (slot, radix) in [(4, t), (3, g), (2, n), (1, g), (0, t)] {
            idx[slot] = at % radix;
            at /= radix;
        }
        let bad = m.materialize().with_action_entry(idx, val.index(n)).unwrap();
        let r = check_module(&bad, true).unwrap();
        for c in r.failures() {
            let w = c.witness.as_ref().unwrap();
            prop_assert!(module_violation(&bad, &c.name, &w.values), "{}", c.name);
        }
    }
}
