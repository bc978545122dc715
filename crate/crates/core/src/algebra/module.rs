use std::fmt;
use std::sync::Arc;

use super::monoid::{monoid_checks, monoid_violation, FiniteCommutativeMonoid};
use super::semiring::{check_semiring, Sort, TernaryGammaSemiring};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::scan::first_violation;
use crate::{Error, Result};

/// A ternary Γ-module over a finite ternary Γ-semiring: a finite commutative
/// monoid `M` with an action `(t1)_α (m)_β t2`.
///
/// Modules built by constructions (direct sums, submodules, quotients) keep
/// a lazy representation: their operations are evaluated through the parts
/// they were built from, so large levels of simplicial objects never
/// materialize quadratic tables.
#[derive(Clone)]
pub struct TernaryGammaModule {
    name: String,
    semiring: Arc<TernaryGammaSemiring>,
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Table {
        carrier: FiniteCommutativeMonoid,
        action: Vec<usize>,
    },
    Sum {
        factors: Vec<Arc<TernaryGammaModule>>,
        strides: Vec<usize>,
        size: usize,
    },
    Sub {
        parent: Arc<TernaryGammaModule>,
        members: Vec<usize>,
        index_of: Vec<usize>,
    },
    Quotient {
        parent: Arc<TernaryGammaModule>,
        representatives: Vec<usize>,
        block_of: Vec<usize>,
    },
}

const ABSENT: usize = usize::MAX;

impl fmt::Debug for TernaryGammaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TernaryGammaModule")
            .field("name", &self.name)
            .field("semiring", &self.semiring.name())
            .field("size", &self.size())
            .finish_non_exhaustive()
    }
}

impl TernaryGammaModule {
    /// `action` is row-major over `(t1, α, m, β, t2)`.
    pub fn new(
        name: impl Into<String>,
        semiring: Arc<TernaryGammaSemiring>,
        carrier: FiniteCommutativeMonoid,
        action: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        let t = semiring.size();
        let g = semiring.gamma_size();
        let m = carrier.size();
        let expected = t * g * m * g * t;
        if action.len() != expected {
            return Err(Error::SizeMismatch {
                what: format!("action table of {name}"),
                expected,
                actual: action.len(),
            });
        }
        if let Some(pos) = action.iter().position(|&v| v >= m) {
            return Err(Error::malformed(
                format!("module {name}"),
                format!("action entry {pos} is {} (out of range)", action[pos]),
            ));
        }
        Ok(TernaryGammaModule {
            name,
            semiring,
            repr: Repr::Table { carrier, action },
        })
    }

    pub fn from_fn(
        name: impl Into<String>,
        semiring: Arc<TernaryGammaSemiring>,
        carrier: FiniteCommutativeMonoid,
        f: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let t = semiring.size();
        let g = semiring.gamma_size();
        let m = carrier.size();
        let mut action = Vec::with_capacity(t * g * m * g * t);
        for t1 in 0..t {
            for al in 0..g {
                for x in 0..m {
                    for be in 0..g {
                        for t2 in 0..t {
                            action.push(f(t1, al, x, be, t2));
                        }
                    }
                }
            }
        }
        Self::new(name, semiring, carrier, action)
    }

    /// The one-element module.
    pub fn zero_module(semiring: Arc<TernaryGammaSemiring>) -> Self {
        let name = format!("0_{}", semiring.name());
        Self::from_fn(name, semiring, FiniteCommutativeMonoid::trivial(), |_, _, _, _, _| 0)
            .expect("zero module")
    }

    /// The semiring acting on itself through its product.
    pub fn regular(name: impl Into<String>, semiring: Arc<TernaryGammaSemiring>) -> Self {
        let carrier = semiring.carrier().clone();
        let s = semiring.clone();
        Self::from_fn(name, semiring, carrier, move |a, al, m, be, b| {
            s.mul(a, al, m, be, b)
        })
        .expect("regular module")
    }

    /// Direct sum (biproduct) of modules over a common semiring. Elements are
    /// tuples encoded lexicographically with the first factor most
    /// significant.
    pub fn direct_sum(
        name: impl Into<String>,
        factors: Vec<Arc<TernaryGammaModule>>,
        element_budget: usize,
    ) -> Result<Self> {
        let name = name.into();
        let semiring = match factors.first() {
            Some(f) => f.semiring.clone(),
            None => {
                return Err(Error::Precondition(format!(
                    "direct sum {name} needs at least one factor"
                )))
            }
        };
        for f in &factors {
            if !same_semiring(&f.semiring, &semiring) {
                return Err(Error::Precondition(format!(
                    "direct sum {name}: factors over different semirings"
                )));
            }
        }
        let mut size: usize = 1;
        for f in &factors {
            size = match size.checked_mul(f.size()) {
                Some(s) if s <= element_budget => s,
                _ => {
                    let needed = factors
                        .iter()
                        .map(|f| f.size().to_string())
                        .collect::<Vec<_>>()
                        .join("*");
                    return Err(Error::ElementBudget {
                        what: name,
                        needed,
                        budget: element_budget,
                    });
                }
            };
        }
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].size();
        }
        Ok(TernaryGammaModule {
            name,
            semiring,
            repr: Repr::Sum {
                factors,
                strides,
                size,
            },
        })
    }

    /// Restriction to a subset that the caller guarantees is a submodule.
    pub(crate) fn sub_unchecked(
        name: impl Into<String>,
        parent: Arc<TernaryGammaModule>,
        mut members: Vec<usize>,
    ) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut index_of = vec![ABSENT; parent.size()];
        for (i, &m) in members.iter().enumerate() {
            index_of[m] = i;
        }
        TernaryGammaModule {
            name: name.into(),
            semiring: parent.semiring.clone(),
            repr: Repr::Sub {
                parent,
                members,
                index_of,
            },
        }
    }

    /// Quotient by a partition the caller guarantees is a congruence.
    /// `block_of` must number blocks in order of first occurrence.
    pub(crate) fn quotient_unchecked(
        name: impl Into<String>,
        parent: Arc<TernaryGammaModule>,
        block_of: Vec<usize>,
    ) -> Self {
        let blocks = block_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut representatives = vec![ABSENT; blocks];
        for (x, &b) in block_of.iter().enumerate() {
            if representatives[b] == ABSENT {
                representatives[b] = x;
            }
        }
        TernaryGammaModule {
            name: name.into(),
            semiring: parent.semiring.clone(),
            repr: Repr::Quotient {
                parent,
                representatives,
                block_of,
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn semiring(&self) -> &Arc<TernaryGammaSemiring> {
        &self.semiring
    }

    pub fn size(&self) -> usize {
        match &self.repr {
            Repr::Table { carrier, .. } => carrier.size(),
            Repr::Sum { size, .. } => *size,
            Repr::Sub { members, .. } => members.len(),
            Repr::Quotient {
                representatives, ..
            } => representatives.len(),
        }
    }

    pub fn zero(&self) -> usize {
        match &self.repr {
            Repr::Table { carrier, .. } => carrier.zero(),
            Repr::Sum { factors, .. } => {
                let zeros: Vec<usize> = factors.iter().map(|f| f.zero()).collect();
                self.encode(&zeros)
            }
            Repr::Sub {
                parent, index_of, ..
            } => index_of[parent.zero()],
            Repr::Quotient {
                parent, block_of, ..
            } => block_of[parent.zero()],
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table { carrier, .. } => carrier.add(a, b),
            Repr::Sum {
                factors, strides, ..
            } => {
                let mut out = 0;
                for (i, f) in factors.iter().enumerate() {
                    let ai = (a / strides[i]) % f.size();
                    let bi = (b / strides[i]) % f.size();
                    out += f.add(ai, bi) * strides[i];
                }
                out
            }
            Repr::Sub {
                parent,
                members,
                index_of,
            } => index_of[parent.add(members[a], members[b])],
            Repr::Quotient {
                parent,
                representatives,
                block_of,
            } => block_of[parent.add(representatives[a], representatives[b])],
        }
    }

    /// `(t1)_α (m)_β t2`.
    pub fn act(&self, t1: usize, al: usize, m: usize, be: usize, t2: usize) -> usize {
        match &self.repr {
            Repr::Table { carrier, action } => {
                let t = self.semiring.size();
                let g = self.semiring.gamma_size();
                action[(((t1 * g + al) * carrier.size() + m) * g + be) * t + t2]
            }
            Repr::Sum {
                factors, strides, ..
            } => {
                let mut out = 0;
                for (i, f) in factors.iter().enumerate() {
                    let mi = (m / strides[i]) % f.size();
                    out += f.act(t1, al, mi, be, t2) * strides[i];
                }
                out
            }
            Repr::Sub {
                parent,
                members,
                index_of,
            } => index_of[parent.act(t1, al, members[m], be, t2)],
            Repr::Quotient {
                parent,
                representatives,
                block_of,
            } => block_of[parent.act(t1, al, representatives[m], be, t2)],
        }
    }

    /// Action of the scalar context with index `s` (see
    /// [`TernaryGammaSemiring::scalar`]).
    pub fn act_scalar(&self, s: usize, m: usize) -> usize {
        let (t1, al, be, t2) = self.semiring.scalar(s);
        self.act(t1, al, m, be, t2)
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.repr {
            Repr::Table { carrier, .. } => carrier.name(x),
            Repr::Sum { factors, .. } => {
                let parts: Vec<String> = self
                    .components(x)
                    .iter()
                    .zip(factors)
                    .map(|(&c, f)| f.element_name(c))
                    .collect();
                format!("({})", parts.join(","))
            }
            Repr::Sub {
                parent, members, ..
            } => parent.element_name(members[x]),
            Repr::Quotient {
                parent,
                representatives,
                ..
            } => format!("[{}]", parent.element_name(representatives[x])),
        }
    }

    pub fn element_names(&self) -> Vec<String> {
        (0..self.size()).map(|x| self.element_name(x)).collect()
    }

    /// Factors of a direct sum.
    pub fn sum_factors(&self) -> Option<&[Arc<TernaryGammaModule>]> {
        match &self.repr {
            Repr::Sum { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Components of an element of a direct sum.
    pub fn components(&self, x: usize) -> Vec<usize> {
        match &self.repr {
            Repr::Sum {
                factors, strides, ..
            } => factors
                .iter()
                .enumerate()
                .map(|(i, f)| (x / strides[i]) % f.size())
                .collect(),
            _ => vec![x],
        }
    }

    /// Element of a direct sum with the given components.
    pub fn encode(&self, parts: &[usize]) -> usize {
        match &self.repr {
            Repr::Sum { strides, .. } => parts.iter().zip(strides).map(|(p, s)| p * s).sum(),
            _ => parts[0],
        }
    }

    /// For submodules: the parent element of each member, in order.
    pub fn sub_members(&self) -> Option<(&Arc<TernaryGammaModule>, &[usize])> {
        match &self.repr {
            Repr::Sub {
                parent, members, ..
            } => Some((parent, members)),
            _ => None,
        }
    }

    /// For quotients: the parent and the block of every parent element.
    pub fn quotient_blocks(&self) -> Option<(&Arc<TernaryGammaModule>, &[usize])> {
        match &self.repr {
            Repr::Quotient {
                parent, block_of, ..
            } => Some((parent, block_of)),
            _ => None,
        }
    }

    /// The additive monoid as an explicit table.
    pub fn carrier(&self) -> FiniteCommutativeMonoid {
        if let Repr::Table { carrier, .. } = &self.repr {
            return carrier.clone();
        }
        let n = self.size();
        let mut add = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(self.add(a, b));
            }
        }
        FiniteCommutativeMonoid::new(n, self.zero(), add, Some(self.element_names()))
            .expect("materialized carrier")
    }

    /// The action as an explicit table, row-major over `(t1, α, m, β, t2)`.
    pub fn action_table(&self) -> Vec<usize> {
        if let Repr::Table { action, .. } = &self.repr {
            return action.clone();
        }
        let t = self.semiring.size();
        let g = self.semiring.gamma_size();
        let n = self.size();
        let mut out = Vec::with_capacity(t * g * n * g * t);
        for t1 in 0..t {
            for al in 0..g {
                for m in 0..n {
                    for be in 0..g {
                        for t2 in 0..t {
                            out.push(self.act(t1, al, m, be, t2));
                        }
                    }
                }
            }
        }
        out
    }

    /// An equivalent module backed by explicit tables.
    pub fn materialize(&self) -> TernaryGammaModule {
        TernaryGammaModule::new(
            self.name.clone(),
            self.semiring.clone(),
            self.carrier(),
            self.action_table(),
        )
        .expect("materialized module")
    }

    /// Table equality: same semiring, carrier, zero, addition and action.
    pub fn same_tables(&self, other: &TernaryGammaModule) -> bool {
        same_semiring(&self.semiring, &other.semiring)
            && self.size() == other.size()
            && self.zero() == other.zero()
            && self.carrier().table() == other.carrier().table()
            && self.action_table() == other.action_table()
    }

    /// Whether every element has an additive inverse.
    pub fn is_group_complete(&self) -> bool {
        (0..self.size()).all(|x| self.negate(x).is_some())
    }

    pub fn negate(&self, x: usize) -> Option<usize> {
        let z = self.zero();
        (0..self.size()).find(|&y| self.add(x, y) == z)
    }

    /// Copy with one action entry overwritten (table-backed copy).
    pub fn with_action_entry(&self, at: [usize; 5], value: usize) -> Result<Self> {
        let t = self.semiring.size();
        let g = self.semiring.gamma_size();
        let n = self.size();
        let mut action = self.action_table();
        action[(((at[0] * g + at[1]) * n + at[2]) * g + at[3]) * t + at[4]] = value;
        Self::new(self.name.clone(), self.semiring.clone(), self.carrier(), action)
    }

    /// Relabels the parameter indices of every action table by `gamma_map`,
    /// keeping the construction structure (sums stay sums, and so on).
    pub fn relabel_gammas(&self, gamma_map: &[usize]) -> TernaryGammaModule {
        let repr = match &self.repr {
            Repr::Table { carrier, action } => {
                let t = self.semiring.size();
                let g = self.semiring.gamma_size();
                let n = carrier.size();
                let mut out = action.clone();
                for t1 in 0..t {
                    for al in 0..g {
                        for m in 0..n {
                            for be in 0..g {
                                for t2 in 0..t {
                                    let dst = (((t1 * g + al) * n + m) * g + be) * t + t2;
                                    let src = (((t1 * g + gamma_map[al]) * n + m) * g
                                        + gamma_map[be])
                                        * t
                                        + t2;
                                    out[dst] = action[src];
                                }
                            }
                        }
                    }
                }
                Repr::Table {
                    carrier: carrier.clone(),
                    action: out,
                }
            }
            Repr::Sum {
                factors,
                strides,
                size,
            } => Repr::Sum {
                factors: factors
                    .iter()
                    .map(|f| Arc::new(f.relabel_gammas(gamma_map)))
                    .collect(),
                strides: strides.clone(),
                size: *size,
            },
            Repr::Sub {
                parent,
                members,
                index_of,
            } => Repr::Sub {
                parent: Arc::new(parent.relabel_gammas(gamma_map)),
                members: members.clone(),
                index_of: index_of.clone(),
            },
            Repr::Quotient {
                parent,
                representatives,
                block_of,
            } => Repr::Quotient {
                parent: Arc::new(parent.relabel_gammas(gamma_map)),
                representatives: representatives.clone(),
                block_of: block_of.clone(),
            },
        };
        TernaryGammaModule {
            name: self.name.clone(),
            semiring: self.semiring.clone(),
            repr,
        }
    }

    fn label(&self, sort: Sort, v: usize) -> String {
        match sort {
            Sort::Vector => self.element_name(v),
            other => self.semiring.label(other, v),
        }
    }
}

/// Two semirings are the same when they are the same allocation or have
/// identical tables.
pub fn same_semiring(a: &Arc<TernaryGammaSemiring>, b: &Arc<TernaryGammaSemiring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

use Sort::{Gamma as G, Scalar as S, Vector as V};

pub(crate) const MODULE_LAWS: &[(&str, Tier, &[Sort])] = &[
    (
        "action_associativity",
        Tier::Axiom,
        &[S, G, S, G, S, G, V, G, S, G, S, G, S],
    ),
    ("action_distributivity_first", Tier::Axiom, &[S, S, G, V, G, S]),
    ("action_distributivity_module", Tier::Axiom, &[S, G, V, V, G, S]),
    ("action_distributivity_last", Tier::Axiom, &[S, G, V, G, S, S]),
    ("zero_absorption", Tier::Normalization, &[S, G, V, G, S]),
];

/// Verifies the module axioms over all tuples. Refuses to run when the
/// underlying semiring does not itself pass [`check_semiring`].
///
/// Associativity is checked for every bracketing of a product of scalars
/// and one module element that type-checks: with the element in the middle
/// of seven slots these are the triple nested action and the action of two
/// semiring products.
pub fn check_module(m: &TernaryGammaModule, strict: bool) -> Result<AxiomReport> {
    let base = check_semiring(m.semiring(), strict);
    if !base.passed() {
        return Err(Error::Precondition(format!(
            "semiring {} of module {} does not pass its axiom check",
            m.semiring().name(),
            m.name()
        )));
    }
    let mut report = AxiomReport::new(m.name(), strict);
    let carrier = m.carrier();
    for c in monoid_checks(&carrier, "monoid.") {
        report.push(c);
    }
    let t = m.semiring().size();
    let g = m.semiring().gamma_size();
    let n = m.size();
    for &(law, tier, sorts) in MODULE_LAWS {
        if law == "zero_absorption" && !strict {
            continue;
        }
        let dims: Vec<usize> = sorts
            .iter()
            .map(|&s| match s {
                Sort::Scalar => t,
                Sort::Gamma => g,
                Sort::Vector => n,
            })
            .collect();
        let hit = first_violation(&dims, |v| module_violation(m, law, v));
        report.push(Check::from_outcome(
            law,
            tier,
            hit.map(|v| {
                let labels = sorts.iter().zip(&v).map(|(&s, &x)| m.label(s, x)).collect();
                Witness::new(v, labels)
            }),
        ));
    }
    Ok(report)
}

/// Re-evaluates a module axiom at a witness tuple; `true` means violated.
pub fn module_violation(m: &TernaryGammaModule, law: &str, v: &[usize]) -> bool {
    if let Some(rest) = law.strip_prefix("monoid.") {
        return monoid_violation(&m.carrier(), rest, v);
    }
    let s = m.semiring();
    let act = |a, al, x, be, b| m.act(a, al, x, be, b);
    let madd = |a, b| m.add(a, b);
    let tadd = |a, b| s.add(a, b);
    match (law, v) {
        ("action_associativity", &[x1, a1, x2, a2, x3, a3, mm, a4, x5, a5, x6, a6, x7]) => {
            let nested = act(x1, a1, act(x2, a2, act(x3, a3, mm, a4, x5), a5, x6), a6, x7);
            let products = act(
                s.mul(x1, a1, x2, a2, x3),
                a3,
                mm,
                a4,
                s.mul(x5, a5, x6, a6, x7),
            );
            nested != products
        }
        ("action_distributivity_first", &[t1, t1b, al, x, be, t2]) => {
            act(tadd(t1, t1b), al, x, be, t2) != madd(act(t1, al, x, be, t2), act(t1b, al, x, be, t2))
        }
        ("action_distributivity_module", &[t1, al, x, y, be, t2]) => {
            act(t1, al, madd(x, y), be, t2) != madd(act(t1, al, x, be, t2), act(t1, al, y, be, t2))
        }
        ("action_distributivity_last", &[t1, al, x, be, t2, t2b]) => {
            act(t1, al, x, be, tadd(t2, t2b)) != madd(act(t1, al, x, be, t2), act(t1, al, x, be, t2b))
        }
        ("zero_absorption", &[t1, al, x, be, t2]) => {
            let tz = s.zero();
            (t1 == tz || t2 == tz || x == m.zero()) && act(t1, al, x, be, t2) != m.zero()
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn mb1_and_zero_module_pass() {
        let b1 = Arc::new(corpus::b1());
        assert!(check_module(&corpus::mb1(), true).unwrap().passed());
        let z = TernaryGammaModule::zero_module(b1);
        assert!(check_module(&z, true).unwrap().passed());
        assert!(check_module(&corpus::mz3(), true).unwrap().passed());
    }

    #[test]
    fn mutated_action_fails_zero_absorption_in_strict_mode() {
        let m = corpus::mb1().with_action_entry([1, 0, 0, 0, 1], 1).unwrap();
        let r = check_module(&m, true).unwrap();
        let c = r.check("zero_absorption").unwrap();
        assert!(!c.passed());
        assert_eq!(c.witness.as_ref().unwrap().values, vec![1, 0, 0, 0, 1]);
        for f in r.failures() {
            assert!(module_violation(&m, &f.name, &f.witness.as_ref().unwrap().values));
        }
        let lax = check_module(&m, false).unwrap();
        assert!(lax.check("zero_absorption").is_none());
    }

    #[test]
    fn refuses_invalid_semiring() {
        let s = Arc::new(corpus::mut1());
        let m = TernaryGammaModule::zero_module(s);
        assert!(matches!(check_module(&m, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn direct_sum_is_componentwise() {
        let mb1 = Arc::new(corpus::mb1());
        let p = TernaryGammaModule::direct_sum("P", vec![mb1.clone(), mb1.clone()], 100).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.components(2), vec![1, 0]);
        assert_eq!(p.add(p.encode(&[1, 0]), p.encode(&[0, 1])), p.encode(&[1, 1]));
        assert_eq!(p.act(1, 0, p.encode(&[1, 1]), 0, 0), p.zero());
        assert!(check_module(&p, true).unwrap().passed());
        assert!(TernaryGammaModule::direct_sum("Q", vec![mb1.clone(); 8], 100).is_err());
    }
}
