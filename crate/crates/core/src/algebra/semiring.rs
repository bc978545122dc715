use super::monoid::{monoid_checks, monoid_violation, FiniteCommutativeMonoid};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::scan::first_violation;
use crate::{Error, Result};

/// A commutative ternary Γ-semiring: a finite commutative monoid `T` with a
/// product `[a, α, b, β, c]` over a finite parameter set Γ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryGammaSemiring {
    name: String,
    carrier: FiniteCommutativeMonoid,
    gammas: Vec<String>,
    ternary: Vec<usize>,
}

/// Element sorts, used to label witness tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sort {
    Scalar,
    Gamma,
    Vector,
}

impl TernaryGammaSemiring {
    /// `ternary` is row-major over `(a, α, b, β, c)`.
    pub fn new(
        name: impl Into<String>,
        carrier: FiniteCommutativeMonoid,
        gammas: Vec<String>,
        ternary: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if gammas.is_empty() {
            return Err(Error::malformed(
                format!("semiring {name}"),
                "parameter set must be non-empty",
            ));
        }
        let t = carrier.size();
        let g = gammas.len();
        let expected = t * g * t * g * t;
        if ternary.len() != expected {
            return Err(Error::SizeMismatch {
                what: format!("ternary table of {name}"),
                expected,
                actual: ternary.len(),
            });
        }
        if let Some(pos) = ternary.iter().position(|&v| v >= t) {
            return Err(Error::malformed(
                format!("semiring {name}"),
                format!("ternary entry {pos} is {} (out of range)", ternary[pos]),
            ));
        }
        Ok(TernaryGammaSemiring {
            name,
            carrier,
            gammas,
            ternary,
        })
    }

    /// Builds the table from a closure.
    pub fn from_fn(
        name: impl Into<String>,
        carrier: FiniteCommutativeMonoid,
        gammas: Vec<String>,
        f: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let t = carrier.size();
        let g = gammas.len();
        let mut table = Vec::with_capacity(t * g * t * g * t);
        for a in 0..t {
            for al in 0..g {
                for b in 0..t {
                    for be in 0..g {
                        for c in 0..t {
                            table.push(f(a, al, b, be, c));
                        }
                    }
                }
            }
        }
        Self::new(name, carrier, gammas, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn carrier(&self) -> &FiniteCommutativeMonoid {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn zero(&self) -> usize {
        self.carrier.zero()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.carrier.add(a, b)
    }

    pub fn gamma_size(&self) -> usize {
        self.gammas.len()
    }

    pub fn gamma_names(&self) -> &[String] {
        &self.gammas
    }

    pub fn table(&self) -> &[usize] {
        &self.ternary
    }

    #[inline]
    pub fn index(&self, a: usize, al: usize, b: usize, be: usize, c: usize) -> usize {
        let t = self.size();
        let g = self.gamma_size();
        (((a * g + al) * t + b) * g + be) * t + c
    }

    /// `[a, α, b, β, c]`.
    #[inline]
    pub fn mul(&self, a: usize, al: usize, b: usize, be: usize, c: usize) -> usize {
        self.ternary[self.index(a, al, b, be, c)]
    }

    /// Returns a copy with one table entry overwritten.
    pub fn with_entry(&self, at: [usize; 5], value: usize) -> Result<Self> {
        let mut table = self.ternary.clone();
        table[self.index(at[0], at[1], at[2], at[3], at[4])] = value;
        Self::new(self.name.clone(), self.carrier.clone(), self.gammas.clone(), table)
    }

    /// Number of scalar contexts `(t1, α, β, t2)` acting on a module.
    pub fn scalar_count(&self) -> usize {
        let t = self.size();
        let g = self.gamma_size();
        t * t * g * g
    }

    /// Decodes a scalar context index into `(t1, α, β, t2)`.
    pub fn scalar(&self, s: usize) -> (usize, usize, usize, usize) {
        let t = self.size();
        let g = self.gamma_size();
        let t2 = s % t;
        let be = (s / t) % g;
        let al = (s / (t * g)) % g;
        let t1 = s / (t * g * g);
        (t1, al, be, t2)
    }

    pub(crate) fn label(&self, sort: Sort, v: usize) -> String {
        match sort {
            Sort::Scalar => self.carrier.name(v),
            Sort::Gamma => self.gammas[v].clone(),
            Sort::Vector => v.to_string(),
        }
    }

    fn labels(&self, sorts: &[Sort], values: &[usize]) -> Vec<String> {
        sorts
            .iter()
            .zip(values)
            .map(|(&s, &v)| self.label(s, v))
            .collect()
    }

    /// Whether `γ: Γ → Γ` leaves the product table unchanged.
    pub fn stabilized_by(&self, gamma_map: &[usize]) -> bool {
        let t = self.size();
        let g = self.gamma_size();
        first_violation(&[t, g, t, g, t], |v| {
            self.mul(v[0], gamma_map[v[1]], v[2], gamma_map[v[3]], v[4])
                != self.mul(v[0], v[1], v[2], v[3], v[4])
        })
        .is_none()
    }
}

use Sort::{Gamma as G, Scalar as S};

/// Axioms checked on semirings, with the sort pattern of their witnesses.
pub(crate) const SEMIRING_LAWS: &[(&str, Tier, &[Sort])] = &[
    ("triadic_associativity", Tier::Axiom, &[S, G, S, G, S, G, S, G, S]),
    ("distributivity_first", Tier::Axiom, &[S, S, G, S, G, S]),
    ("distributivity_second", Tier::Axiom, &[S, G, S, S, G, S]),
    ("distributivity_third", Tier::Axiom, &[S, G, S, G, S, S]),
    ("gamma_commutativity", Tier::Axiom, &[S, G, S, G, S]),
    ("zero_absorption", Tier::Normalization, &[S, G, S, G, S]),
];

/// Verifies every semiring axiom over all tuples. With `strict`, the
/// zero-absorption normalization axiom is checked as well.
pub fn check_semiring(s: &TernaryGammaSemiring, strict: bool) -> AxiomReport {
    let mut report = AxiomReport::new(s.name(), strict);
    for c in monoid_checks(s.carrier(), "monoid.") {
        report.push(c);
    }
    let t = s.size();
    let g = s.gamma_size();
    for &(law, tier, sorts) in SEMIRING_LAWS {
        if law == "zero_absorption" && !strict {
            continue;
        }
        let dims: Vec<usize> = sorts
            .iter()
            .map(|&sort| if sort == Sort::Gamma { g } else { t })
            .collect();
        let hit = first_violation(&dims, |v| semiring_violation(s, law, v));
        report.push(Check::from_outcome(
            law,
            tier,
            hit.map(|v| Witness::new(v.clone(), s.labels(sorts, &v))),
        ));
    }
    report
}

/// Re-evaluates a semiring axiom at a witness tuple; `true` means violated.
pub fn semiring_violation(s: &TernaryGammaSemiring, law: &str, v: &[usize]) -> bool {
    if let Some(rest) = law.strip_prefix("monoid.") {
        return monoid_violation(s.carrier(), rest, v);
    }
    let m = |a, al, b, be, c| s.mul(a, al, b, be, c);
    let add = |a, b| s.add(a, b);
    match (law, v) {
        ("triadic_associativity", &[a, al, b, be, c, ga, d, de, e]) => {
            let left = m(m(a, al, b, be, c), ga, d, de, e);
            let mid = m(a, al, m(b, be, c, ga, d), de, e);
            let right = m(a, al, b, be, m(c, ga, d, de, e));
            left != mid || mid != right
        }
        ("distributivity_first", &[a, a2, al, b, be, c]) => {
            m(add(a, a2), al, b, be, c) != add(m(a, al, b, be, c), m(a2, al, b, be, c))
        }
        ("distributivity_second", &[a, al, b, b2, be, c]) => {
            m(a, al, add(b, b2), be, c) != add(m(a, al, b, be, c), m(a, al, b2, be, c))
        }
        ("distributivity_third", &[a, al, b, be, c, c2]) => {
            m(a, al, b, be, add(c, c2)) != add(m(a, al, b, be, c), m(a, al, b, be, c2))
        }
        ("gamma_commutativity", &[a, al, b, be, c]) => {
            // each unordered pair {tuple, mirror} is checked once, at its
            // lexicographically larger member
            [a, al, b, be, c] > [c, be, b, al, a] && m(a, al, b, be, c) != m(c, be, b, al, a)
        }
        ("zero_absorption", &[a, al, b, be, c]) => {
            let z = s.zero();
            (a == z || b == z || c == z) && m(a, al, b, be, c) != z
        }
        _ => false,
    }
}
