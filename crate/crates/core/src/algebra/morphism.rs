use std::sync::Arc;

use rayon::prelude::*;

use super::module::{same_semiring, TernaryGammaModule};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::scan::first_violation;
use crate::{Error, Result};

/// A Γ-linear map between modules over the same semiring, stored as a table.
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    name: String,
    source: Arc<TernaryGammaModule>,
    target: Arc<TernaryGammaModule>,
    table: Vec<usize>,
}

impl ModuleMorphism {
    /// Validates shape only; use [`check_morphism`] for the linearity laws.
    pub fn new(
        name: impl Into<String>,
        source: Arc<TernaryGammaModule>,
        target: Arc<TernaryGammaModule>,
        table: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if !same_semiring(source.semiring(), target.semiring()) {
            return Err(Error::Precondition(format!(
                "morphism {name}: source {} and target {} are over different semirings",
                source.name(),
                target.name()
            )));
        }
        if table.len() != source.size() {
            return Err(Error::SizeMismatch {
                what: format!("map of {name}"),
                expected: source.size(),
                actual: table.len(),
            });
        }
        if let Some(x) = table.iter().position(|&y| y >= target.size()) {
            return Err(Error::malformed(
                format!("morphism {name}"),
                format!("image of element {x} is out of range"),
            ));
        }
        Ok(ModuleMorphism {
            name,
            source,
            target,
            table,
        })
    }

    pub fn from_fn(
        name: impl Into<String>,
        source: Arc<TernaryGammaModule>,
        target: Arc<TernaryGammaModule>,
        f: impl FnMut(usize) -> usize,
    ) -> Result<Self> {
        let table = (0..source.size()).map(f).collect();
        Self::new(name, source, target, table)
    }

    pub fn identity(m: Arc<TernaryGammaModule>) -> Self {
        let name = format!("id_{}", m.name());
        Self::from_fn(name, m.clone(), m, |x| x).expect("identity")
    }

    pub fn zero(source: Arc<TernaryGammaModule>, target: Arc<TernaryGammaModule>) -> Result<Self> {
        let z = target.zero();
        let name = format!("0_{}_{}", source.name(), target.name());
        Self::from_fn(name, source, target, |_| z)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<TernaryGammaModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TernaryGammaModule> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target.size() != other.source.size()
            || !same_semiring(self.target.semiring(), other.source.semiring())
        {
            return Err(Error::Precondition(format!(
                "cannot compose {} after {}: {} is not the source of {}",
                other.name,
                self.name,
                self.target.name(),
                other.name
            )));
        }
        ModuleMorphism::from_fn(
            format!("{}.{}", other.name, self.name),
            self.source.clone(),
            other.target.clone(),
            |x| other.apply(self.apply(x)),
        )
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &y in &self.table {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        let z = self.target.zero();
        self.table.iter().all(|&y| y == z)
    }

    /// Sorted list of image elements.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.target.size()];
        for &y in &self.table {
            seen[y] = true;
        }
        (0..seen.len()).filter(|&y| seen[y]).collect()
    }

    /// Elements sent to zero.
    pub fn zero_fiber(&self) -> Vec<usize> {
        let z = self.target.zero();
        (0..self.table.len()).filter(|&x| self.table[x] == z).collect()
    }

    /// Fast yes/no version of [`check_morphism`].
    pub fn is_linear(&self) -> bool {
        is_linear_table(&self.source, &self.target, &self.table)
    }
}

/// Table equality of two morphisms with equal-size endpoints.
impl PartialEq for ModuleMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && self.source.size() == other.source.size()
            && self.target.size() == other.target.size()
    }
}

pub(crate) fn is_linear_table(m: &TernaryGammaModule, n: &TernaryGammaModule, f: &[usize]) -> bool {
    if f[m.zero()] != n.zero() {
        return false;
    }
    let size = m.size();
    let scalars = m.semiring().scalar_count();
    (0..size).into_par_iter().all(|x| {
        (0..size).all(|y| f[m.add(x, y)] == n.add(f[x], f[y]))
            && (0..scalars).all(|s| f[m.act_scalar(s, x)] == n.act_scalar(s, f[x]))
    })
}

/// Verifies additivity, zero preservation and Γ-equivariance.
pub fn check_morphism(f: &ModuleMorphism) -> AxiomReport {
    let m = f.source();
    let mut report = AxiomReport::new(f.name(), true);
    let hit = first_violation(&[m.size(), m.size()], |v| {
        morphism_violation(f, "additivity", v)
    });
    report.push(Check::from_outcome(
        "additivity",
        Tier::Axiom,
        hit.map(|v| {
            let labels = v.iter().map(|&x| m.element_name(x)).collect();
            Witness::new(v, labels)
        }),
    ));
    let z = m.zero();
    report.push(Check::from_outcome(
        "zero_preservation",
        Tier::Axiom,
        morphism_violation(f, "zero_preservation", &[z])
            .then(|| Witness::new(vec![z], vec![m.element_name(z)])),
    ));
    let s = m.semiring();
    let t = s.size();
    let g = s.gamma_size();
    let hit = first_violation(&[t, g, m.size(), g, t], |v| {
        morphism_violation(f, "equivariance", v)
    });
    report.push(Check::from_outcome(
        "equivariance",
        Tier::Axiom,
        hit.map(|v| {
            let labels = vec![
                s.carrier().name(v[0]),
                s.gamma_names()[v[1]].clone(),
                m.element_name(v[2]),
                s.gamma_names()[v[3]].clone(),
                s.carrier().name(v[4]),
            ];
            Witness::new(v, labels)
        }),
    ));
    report
}

/// Re-evaluates a morphism law at a witness tuple; `true` means violated.
pub fn morphism_violation(f: &ModuleMorphism, law: &str, v: &[usize]) -> bool {
    let m = f.source();
    let n = f.target();
    match (law, v) {
        ("additivity", &[x, y]) => f.apply(m.add(x, y)) != n.add(f.apply(x), f.apply(y)),
        ("zero_preservation", &[z]) => z == m.zero() && f.apply(z) != n.zero(),
        ("equivariance", &[t1, al, x, be, t2]) => {
            f.apply(m.act(t1, al, x, be, t2)) != n.act(t1, al, f.apply(x), be, t2)
        }
        _ => false,
    }
}

/// How an element of a span is obtained from earlier ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Derivation {
    Zero,
    Generator(usize),
    Add(usize, usize),
    Act(usize, usize),
}

/// A generating set of a module chosen greedily in index order, with a
/// derivation of every element of the generated submodule. Every element
/// below the `i`-th generator lies in the span of the earlier ones, so
/// assignments to generators in lexicographic order give tables in
/// lexicographic order.
#[derive(Clone, Debug)]
pub(crate) struct Span {
    pub generators: Vec<usize>,
    /// Elements in derivation order.
    pub order: Vec<usize>,
    pub how: Vec<Option<Derivation>>,
    /// `stage[x]` = number of generators needed to reach `x`.
    pub stage: Vec<usize>,
}

impl Span {
    /// Span of the given seed elements (all elements when `seed` is `None`).
    pub fn new(m: &TernaryGammaModule, seed: Option<&[usize]>) -> Span {
        let n = m.size();
        let scalars = m.semiring().scalar_count();
        let mut how = vec![None; n];
        let mut stage = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut generators = Vec::new();
        let z = m.zero();
        how[z] = Some(Derivation::Zero);
        stage[z] = 0;
        order.push(z);
        let candidates: Vec<usize> = match seed {
            Some(s) => s.to_vec(),
            None => (0..n).collect(),
        };
        for x in candidates {
            if how[x].is_some() {
                continue;
            }
            let k = generators.len();
            generators.push(x);
            how[x] = Some(Derivation::Generator(k));
            stage[x] = k + 1;
            let mut head = order.len();
            order.push(x);
            while head < order.len() {
                let a = order[head];
                head += 1;
                for s in 0..scalars {
                    let y = m.act_scalar(s, a);
                    if how[y].is_none() {
                        how[y] = Some(Derivation::Act(s, a));
                        stage[y] = k + 1;
                        order.push(y);
                    }
                }
                for i in 0..head {
                    let b = order[i];
                    let y = m.add(a, b);
                    if how[y].is_none() {
                        how[y] = Some(Derivation::Add(a, b));
                        stage[y] = k + 1;
                        order.push(y);
                    }
                }
            }
        }
        Span {
            generators,
            order,
            how,
            stage,
        }
    }

    pub fn members(&self) -> Vec<usize> {
        let mut v = self.order.clone();
        v.sort_unstable();
        v
    }

    /// Extends values on generators to the span. Returns `None` when a
    /// derivation conflicts with a value forced earlier (cannot happen for
    /// a genuine morphism).
    pub fn extend(
        &self,
        m: &TernaryGammaModule,
        n: &TernaryGammaModule,
        values: &[usize],
        upto_stage: usize,
    ) -> Vec<usize> {
        let mut f = vec![usize::MAX; m.size()];
        for &x in &self.order {
            if self.stage[x] > upto_stage {
                continue;
            }
            f[x] = match self.how[x].expect("derived") {
                Derivation::Zero => n.zero(),
                Derivation::Generator(k) => values[k],
                Derivation::Add(a, b) => n.add(f[a], f[b]),
                Derivation::Act(s, a) => n.act_scalar(s, f[a]),
            };
        }
        f
    }
}

/// Number of candidates `base^exp`, saturating.
pub(crate) fn power(base: usize, exp: usize) -> u128 {
    let mut out: u128 = 1;
    for _ in 0..exp {
        out = out.saturating_mul(base as u128);
    }
    out
}

/// All morphisms `m → n`, in lexicographic order of their tables.
///
/// Candidates are assignments of values to a greedy generating set of `m`;
/// the budget bounds that number. The error reports the naive space
/// `|n|^|m|` alongside it.
pub fn enumerate_morphisms(
    m: &Arc<TernaryGammaModule>,
    n: &Arc<TernaryGammaModule>,
    budget: u64,
) -> Result<Vec<ModuleMorphism>> {
    let tables = enumerate_morphism_tables(m, n, budget)?;
    Ok(tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| ModuleMorphism {
            name: format!("h{i}"),
            source: m.clone(),
            target: n.clone(),
            table: t,
        })
        .collect())
}

pub(crate) fn enumerate_morphism_tables(
    m: &TernaryGammaModule,
    n: &TernaryGammaModule,
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    if !same_semiring(m.semiring(), n.semiring()) {
        return Err(Error::Precondition(format!(
            "{} and {} are over different semirings",
            m.name(),
            n.name()
        )));
    }
    let span = Span::new(m, None);
    let k = span.generators.len();
    let candidates = power(n.size(), k);
    if candidates > budget as u128 {
        return Err(Error::SearchSpaceTooLarge {
            what: format!("morphisms {} -> {}", m.name(), n.name()),
            space: format!(
                "|{}|^|{}| = {}^{} ({} after reduction to {} generators)",
                n.name(),
                m.name(),
                n.size(),
                m.size(),
                candidates,
                k
            ),
            budget,
        });
    }
    // members of each stage, for prefix checks
    let mut by_stage: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for &x in &span.order {
        by_stage[span.stage[x]].push(x);
    }
    let mut out = Vec::new();
    let mut values = vec![0; k];
    search(m, n, &span, &by_stage, &mut values, 0, &mut out);
    Ok(out)
}

fn search(
    m: &TernaryGammaModule,
    n: &TernaryGammaModule,
    span: &Span,
    by_stage: &[Vec<usize>],
    values: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let k = span.generators.len();
    let f = span.extend(m, n, values, depth);
    if !consistent_upto(m, n, span, by_stage, &f, depth) {
        return;
    }
    if depth == k {
        out.push(f);
        return;
    }
    for v in 0..n.size() {
        values[depth] = v;
        search(m, n, span, by_stage, values, depth + 1, out);
    }
}

/// Morphisms `m → n` whose value at every `x` satisfies `allowed(x, y)`,
/// in lexicographic order. Each search node costs one unit of `budget`;
/// `None` means the budget ran out before the search finished.
pub(crate) fn constrained_morphism_tables(
    m: &TernaryGammaModule,
    n: &TernaryGammaModule,
    allowed: &(dyn Fn(usize, usize) -> bool + Sync),
    budget: &mut u64,
) -> Option<Vec<Vec<usize>>> {
    let span = Span::new(m, None);
    let k = span.generators.len();
    let mut by_stage: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for &x in &span.order {
        by_stage[span.stage[x]].push(x);
    }
    let choices: Vec<Vec<usize>> = span
        .generators
        .iter()
        .map(|&g| (0..n.size()).filter(|&y| allowed(g, y)).collect())
        .collect();
    let mut out = Vec::new();
    let mut values = vec![0; k];
    let finished = constrained_search(
        m, n, &span, &by_stage, &choices, allowed, &mut values, 0, &mut out, budget,
    );
    finished.then_some(out)
}

#[allow(clippy::too_many_arguments)]
fn constrained_search(
    m: &TernaryGammaModule,
    n: &TernaryGammaModule,
    span: &Span,
    by_stage: &[Vec<usize>],
    choices: &[Vec<usize>],
    allowed: &(dyn Fn(usize, usize) -> bool + Sync),
    values: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<Vec<usize>>,
    budget: &mut u64,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let f = span.extend(m, n, values, depth);
    if !by_stage[depth].iter().all(|&x| allowed(x, f[x]))
        || !consistent_upto(m, n, span, by_stage, &f, depth)
    {
        return true;
    }
    if depth == span.generators.len() {
        out.push(f);
        return true;
    }
    for &v in &choices[depth] {
        values[depth] = v;
        if !constrained_search(m, n, span, by_stage, choices, allowed, values, depth + 1, out, budget) {
            return false;
        }
    }
    true
}

/// Checks linearity on the submodule reached with the first `depth`
/// generators, only for pairs involving the newest stage.
fn consistent_upto(
    m: &TernaryGammaModule,
    n: &TernaryGammaModule,
    span: &Span,
    by_stage: &[Vec<usize>],
    f: &[usize],
    depth: usize,
) -> bool {
    let scalars = m.semiring().scalar_count();
    let newest = &by_stage[depth];
    let known: Vec<usize> = by_stage[..=depth].iter().flatten().copied().collect();
    newest.par_iter().all(|&x| {
        known.iter().all(|&y| f[m.add(x, y)] == n.add(f[x], f[y]))
            && (0..scalars).all(|s| f[m.act_scalar(s, x)] == n.act_scalar(s, f[x]))
    }) && span.stage[m.zero()] == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn brute_force(m: &TernaryGammaModule, n: &TernaryGammaModule) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut t = vec![0; m.size()];
        let dims = vec![n.size(); m.size()];
        loop {
            if is_linear_table(m, n, &t) {
                out.push(t.clone());
            }
            if !crate::scan::advance(&mut t, &dims) {
                return out;
            }
        }
    }

    #[test]
    fn swap_fails_additivity_first() {
        let m = Arc::new(corpus::mb1());
        let swap = ModuleMorphism::new("swap", m.clone(), m.clone(), vec![1, 0]).unwrap();
        let r = check_morphism(&swap);
        let c = r.check("additivity").unwrap();
        assert!(!c.passed());
        assert_eq!(c.witness.as_ref().unwrap().values, vec![0, 1]);
        for c in r.failures() {
            assert!(morphism_violation(&swap, &c.name, &c.witness.as_ref().unwrap().values));
        }
    }

    #[test]
    fn identity_and_zero_pass() {
        let m = Arc::new(corpus::mb1());
        assert!(check_morphism(&ModuleMorphism::identity(m.clone())).passed());
        assert!(check_morphism(&ModuleMorphism::zero(m.clone(), m).unwrap()).passed());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let mods: Vec<Arc<TernaryGammaModule>> = corpus::small_b1_modules()
            .into_iter()
            .chain([corpus::mb1_squared()])
            .map(Arc::new)
            .collect();
        for a in &mods {
            for b in &mods {
                let fast: Vec<Vec<usize>> = enumerate_morphisms(a, b, 1 << 20)
                    .unwrap()
                    .into_iter()
                    .map(|f| f.table().to_vec())
                    .collect();
                assert_eq!(fast, brute_force(a, b), "{} -> {}", a.name(), b.name());
            }
        }
        let z3 = Arc::new(corpus::mz3());
        let fast = enumerate_morphisms(&z3, &z3, 100).unwrap();
        assert_eq!(fast.len(), brute_force(&z3, &z3).len());
    }

    #[test]
    fn zero_module_counts() {
        let b1 = Arc::new(corpus::b1());
        let zero = Arc::new(TernaryGammaModule::zero_module(b1));
        let m = Arc::new(corpus::mb1());
        assert_eq!(enumerate_morphisms(&zero, &m, 10).unwrap().len(), 1);
        assert_eq!(enumerate_morphisms(&m, &zero, 10).unwrap().len(), 1);
        let all = enumerate_morphisms(&m, &m, 10).unwrap();
        assert!(all.iter().any(|f| f.table() == [0, 1]));
        assert!(all.iter().any(|f| f.table() == [0, 0]));
    }

    #[test]
    fn budget_error_names_naive_space() {
        let m = Arc::new(corpus::mb1_squared());
        let err = enumerate_morphisms(&m, &m, 1).unwrap_err();
        assert!(err.to_string().contains("4^4"), "{err}");
    }
}
