//! Enumeration of small semirings and modules, and isomorphism search.

use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::module::{check_module, TernaryGammaModule};
use super::monoid::FiniteCommutativeMonoid;
use super::morphism::enumerate_morphisms;
use super::semiring::{check_semiring, TernaryGammaSemiring, SEMIRING_LAWS};
use crate::scan::advance;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every isomorphism class, one representative each.
    Exhaustive,
    /// Up to `count` randomized backtracking runs; no completeness claim.
    Sampled { seed: u64, count: usize },
}

/// Commutative monoids on `{0, .., n-1}` with zero `0`, up to relabeling
/// the nonzero elements. Exhaustive for `n ≤ 2`.
fn additive_structures(n: usize) -> Vec<FiniteCommutativeMonoid> {
    match n {
        1 => vec![FiniteCommutativeMonoid::trivial()],
        2 => vec![
            FiniteCommutativeMonoid::boolean(),
            FiniteCommutativeMonoid::cyclic(2),
        ],
        _ => vec![FiniteCommutativeMonoid::cyclic(n), chain_semilattice(n)],
    }
}

/// `{0 < 1 < .. < n-1}` under `max`.
fn chain_semilattice(n: usize) -> FiniteCommutativeMonoid {
    let add = (0..n * n).map(|i| (i / n).max(i % n)).collect();
    FiniteCommutativeMonoid::new(n, 0, add, None).expect("chain")
}

fn gamma_names(g: usize) -> Vec<String> {
    if g == 1 {
        vec!["g".to_string()]
    } else {
        (1..=g).map(|i| format!("g{i}")).collect()
    }
}

/// Semirings with `t_size` elements and `gamma_size` parameters. Every
/// emitted instance passes [`check_semiring`] in the given mode.
pub fn enumerate_semirings(
    t_size: usize,
    gamma_size: usize,
    mode: EnumerationMode,
    strict: bool,
) -> Result<Vec<TernaryGammaSemiring>> {
    if t_size == 0 || gamma_size == 0 {
        return Err(Error::Precondition("sizes must be positive".into()));
    }
    match mode {
        EnumerationMode::Exhaustive => {
            if t_size > 2 || gamma_size != 1 {
                return Err(Error::Unsupported(format!(
                    "exhaustive enumeration is limited to |T| <= 2 and |Γ| = 1 (asked {t_size}, {gamma_size})"
                )));
            }
            exhaustive(t_size, strict)
        }
        EnumerationMode::Sampled { seed, count } => sampled(t_size, gamma_size, seed, count, strict),
    }
}

fn exhaustive(t: usize, strict: bool) -> Result<Vec<TernaryGammaSemiring>> {
    let cells = t * t * t;
    let mut out: Vec<TernaryGammaSemiring> = Vec::new();
    for (k, carrier) in additive_structures(t).into_iter().enumerate() {
        let mut table = vec![0; cells];
        let dims = vec![t; cells];
        loop {
            let s = TernaryGammaSemiring::new(
                format!("S{t}_{k}_{}", out.len()),
                carrier.clone(),
                gamma_names(1),
                table.clone(),
            )?;
            if check_semiring(&s, strict).passed()
                && !out.iter().any(|o| semiring_isomorphism(o, &s).is_some())
            {
                out.push(s);
            }
            if !advance(&mut table, &dims) {
                break;
            }
        }
    }
    Ok(out)
}

const UNKNOWN: usize = usize::MAX;

fn sampled(
    t: usize,
    g: usize,
    seed: u64,
    count: usize,
    strict: bool,
) -> Result<Vec<TernaryGammaSemiring>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let structures = additive_structures(t);
    let mut out: Vec<TernaryGammaSemiring> = Vec::new();
    for run in 0..count {
        let carrier = structures.choose(&mut rng).expect("nonempty").clone();
        let cells = t * g * t * g * t;
        let mut table = vec![UNKNOWN; cells];
        let probe = TernaryGammaSemiring::new("probe", carrier.clone(), gamma_names(g), vec![0; cells])?;
        if strict {
            for i in 0..cells {
                let v = decode(i, t, g);
                if v[0] == 0 || v[2] == 0 || v[4] == 0 {
                    table[i] = 0;
                }
            }
        }
        let mut steps = 0usize;
        if fill(&probe, &mut table, &mut rng, strict, &mut steps) {
            let s = TernaryGammaSemiring::new(format!("R{t}_{g}_{run}"), carrier, gamma_names(g), table)?;
            if check_semiring(&s, strict).passed() && !out.iter().any(|o| o.table() == s.table()) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn decode(mut i: usize, t: usize, g: usize) -> [usize; 5] {
    let c = i % t;
    i /= t;
    let be = i % g;
    i /= g;
    let b = i % t;
    i /= t;
    let al = i % g;
    [i / g, al, b, be, c]
}

/// Randomized backtracking with incremental axiom checks: after each cell
/// (and its mirror) is fixed, every axiom instance whose lookups are all
/// known is evaluated.
fn fill(
    probe: &TernaryGammaSemiring,
    table: &mut [usize],
    rng: &mut ChaCha8Rng,
    strict: bool,
    steps: &mut usize,
) -> bool {
    *steps += 1;
    if *steps > 20_000 {
        return false;
    }
    let Some(cell) = table.iter().position(|&v| v == UNKNOWN) else {
        return true;
    };
    let t = probe.size();
    let g = probe.gamma_size();
    let [a, al, b, be, c] = decode(cell, t, g);
    let mirror = probe.index(c, be, b, al, a);
    let mut values: Vec<usize> = (0..t).collect();
    values.shuffle(rng);
    for v in values {
        table[cell] = v;
        table[mirror] = v;
        if partial_ok(probe, table, strict) && fill(probe, table, rng, strict, steps) {
            return true;
        }
    }
    table[cell] = UNKNOWN;
    table[mirror] = UNKNOWN;
    false
}

fn partial_ok(probe: &TernaryGammaSemiring, table: &[usize], strict: bool) -> bool {
    let t = probe.size();
    let g = probe.gamma_size();
    let lookup = |a: usize, al: usize, b: usize, be: usize, c: usize| {
        if a == UNKNOWN || b == UNKNOWN || c == UNKNOWN {
            UNKNOWN
        } else {
            table[probe.index(a, al, b, be, c)]
        }
    };
    let add = |a: usize, b: usize| {
        if a == UNKNOWN || b == UNKNOWN {
            UNKNOWN
        } else {
            probe.add(a, b)
        }
    };
    let differ = |x: usize, y: usize| x != UNKNOWN && y != UNKNOWN && x != y;
    for &(law, _, sorts) in SEMIRING_LAWS {
        if law == "zero_absorption" && !strict {
            continue;
        }
        let dims: Vec<usize> = sorts
            .iter()
            .map(|&s| if s == super::semiring::Sort::Gamma { g } else { t })
            .collect();
        let mut v = vec![0; dims.len()];
        loop {
            let bad = match (law, v.as_slice()) {
                ("triadic_associativity", &[a, al, b, be, c, ga, d, de, e]) => {
                    let l = lookup(lookup(a, al, b, be, c), ga, d, de, e);
                    let m = lookup(a, al, lookup(b, be, c, ga, d), de, e);
                    let r = lookup(a, al, b, be, lookup(c, ga, d, de, e));
                    differ(l, m) || differ(m, r) || differ(l, r)
                }
                ("distributivity_first", &[a, a2, al, b, be, c]) => differ(
                    lookup(add(a, a2), al, b, be, c),
                    add(lookup(a, al, b, be, c), lookup(a2, al, b, be, c)),
                ),
                ("distributivity_second", &[a, al, b, b2, be, c]) => differ(
                    lookup(a, al, add(b, b2), be, c),
                    add(lookup(a, al, b, be, c), lookup(a, al, b2, be, c)),
                ),
                ("distributivity_third", &[a, al, b, be, c, c2]) => differ(
                    lookup(a, al, b, be, add(c, c2)),
                    add(lookup(a, al, b, be, c), lookup(a, al, b, be, c2)),
                ),
                _ => false,
            };
            if bad {
                return false;
            }
            if !advance(&mut v, &dims) {
                break;
            }
        }
    }
    true
}

/// Carrier bijection (fixing zero) and Γ-relabeling carrying `a` onto `b`:
/// `b.mul(σa, τα, σb, τβ, σc) = σ(a.mul(a, α, b, β, c))`.
pub fn semiring_isomorphism(
    a: &TernaryGammaSemiring,
    b: &TernaryGammaSemiring,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.size() != b.size() || a.gamma_size() != b.gamma_size() {
        return None;
    }
    let t = a.size();
    let g = a.gamma_size();
    for sigma in permutations(t) {
        if sigma[a.zero()] != b.zero() {
            continue;
        }
        let adds = (0..t).all(|x| (0..t).all(|y| sigma[a.add(x, y)] == b.add(sigma[x], sigma[y])));
        if !adds {
            continue;
        }
        for tau in permutations(g) {
            let mut ok = true;
            let mut v = vec![0; 5];
            let dims = [t, g, t, g, t];
            loop {
                let [x, al, y, be, z] = [v[0], v[1], v[2], v[3], v[4]];
                if sigma[a.mul(x, al, y, be, z)]
                    != b.mul(sigma[x], tau[al], sigma[y], tau[be], sigma[z])
                {
                    ok = false;
                    break;
                }
                if !advance(&mut v, &dims) {
                    break;
                }
            }
            if ok {
                return Some((sigma.clone(), tau));
            }
        }
    }
    None
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// A bijective morphism `a → b`, if the modules are isomorphic.
pub fn module_isomorphism(
    a: &Arc<TernaryGammaModule>,
    b: &Arc<TernaryGammaModule>,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    Ok(enumerate_morphisms(a, b, budget)?
        .into_iter()
        .find(|f| f.is_bijective())
        .map(|f| f.table().to_vec()))
}

/// Every module of size `size ≤ 2` over `s` (one per isomorphism class),
/// obtained by filtering all action tables through [`check_module`].
pub fn enumerate_modules(
    s: &Arc<TernaryGammaSemiring>,
    size: usize,
    strict: bool,
) -> Result<Vec<TernaryGammaModule>> {
    if size == 0 || size > 2 {
        return Err(Error::Unsupported(format!(
            "module enumeration is limited to carriers of size 1 or 2 (asked {size})"
        )));
    }
    let t = s.size();
    let g = s.gamma_size();
    let cells = t * g * size * g * t;
    if cells > 20 {
        return Err(Error::SearchSpaceTooLarge {
            what: format!("action tables over {}", s.name()),
            space: format!("{size}^{cells}"),
            budget: 1 << 20,
        });
    }
    let mut out: Vec<Arc<TernaryGammaModule>> = Vec::new();
    for carrier in additive_structures(size) {
        let mut action = vec![0; cells];
        let dims = vec![size; cells];
        loop {
            let m = Arc::new(TernaryGammaModule::new(
                format!("{}_{}", s.name(), out.len()),
                s.clone(),
                carrier.clone(),
                action.clone(),
            )?);
            if check_module(&m, strict)?.passed() {
                let mut fresh = true;
                for o in &out {
                    if module_isomorphism(o, &m, 1 << 16)?.is_some() {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    out.push(m);
                }
            }
            if !advance(&mut action, &dims) {
                break;
            }
        }
    }
    Ok(out.into_iter().map(|m| (*m).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::semiring_violation;
    use crate::corpus;

    #[test]
    fn one_element_semiring_is_unique() {
        let all = enumerate_semirings(1, 1, EnumerationMode::Exhaustive, true).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn two_element_classes_contain_b1_and_are_distinct() {
        let all = enumerate_semirings(2, 1, EnumerationMode::Exhaustive, true).unwrap();
        let b1 = corpus::b1();
        assert!(all.iter().any(|s| semiring_isomorphism(s, &b1).is_some()));
        for (i, a) in all.iter().enumerate() {
            assert!(check_semiring(a, true).passed());
            for b in &all[i + 1..] {
                assert!(semiring_isomorphism(a, b).is_none());
            }
        }
    }

    #[test]
    fn exhaustive_beyond_limits_is_refused() {
        assert!(matches!(
            enumerate_semirings(3, 1, EnumerationMode::Exhaustive, true),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn sampled_instances_pass_and_are_reproducible() {
        let mode = EnumerationMode::Sampled { seed: 7, count: 4 };
        let a = enumerate_semirings(3, 1, mode, true).unwrap();
        let b = enumerate_semirings(3, 1, mode, true).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b);
        for s in &a {
            assert!(check_semiring(s, true).passed());
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    #[test]
    fn modules_over_b1() {
        let b1 = Arc::new(corpus::b1());
        assert_eq!(enumerate_modules(&b1, 1, true).unwrap().len(), 1);
        let two = enumerate_modules(&b1, 2, true).unwrap();
        assert!(two.iter().any(|m| m.same_tables(&corpus::mb1())));
    }

    #[test]
    fn witness_replay_on_mutations() {
        let s = corpus::mut1();
        let r = check_semiring(&s, true);
        for c in r.failures() {
            assert!(semiring_violation(&s, &c.name, &c.witness.as_ref().unwrap().values));
        }
    }
}
