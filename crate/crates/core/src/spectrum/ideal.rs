use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::TernaryGammaSemiring;
use crate::{Error, Result};

/// Which slots a prime must catch a factor in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primality {
    /// `a α b β c ∈ P` implies one of `a, b, c` lies in `P`.
    AnySlot,
    /// `a α b β c ∈ P` implies `a ∈ P` or `c ∈ P`.
    OuterSlots,
}

/// Conventions for ideals and primes. The default admits the improper
/// ideal but not as a prime, so the one-element semiring has empty
/// spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealConvention {
    pub primality: Primality,
    pub improper_ideals: bool,
    pub improper_primes: bool,
    /// Largest carrier whose subsets are enumerated.
    pub max_carrier: usize,
}

impl Default for IdealConvention {
    fn default() -> Self {
        IdealConvention {
            primality: Primality::AnySlot,
            improper_ideals: true,
            improper_primes: false,
            max_carrier: 20,
        }
    }
}

/// A Γ-ideal given by its sorted members.
#[derive(Clone, Debug)]
pub struct GammaIdeal {
    pub semiring: Arc<TernaryGammaSemiring>,
    pub members: Vec<usize>,
}

impl PartialEq for GammaIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for GammaIdeal {}

impl GammaIdeal {
    /// Validates `members` against the ideal axioms.
    pub fn new(semiring: Arc<TernaryGammaSemiring>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&x) = members.iter().find(|&&x| x >= semiring.size()) {
            return Err(Error::malformed("ideal", format!("element {x} out of range")));
        }
        let mask = mask_of(&members, semiring.size());
        if let Some(w) = ideal_violation(&semiring, &mask) {
            return Err(Error::Precondition(format!("not a Γ-ideal: {}", w.0)));
        }
        Ok(GammaIdeal { semiring, members })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.semiring.size()
    }

    pub fn is_subset_of(&self, other: &GammaIdeal) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn label(&self) -> String {
        let names: Vec<String> = self.members.iter().map(|&x| self.semiring.carrier().name(x)).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn mask_of(members: &[usize], size: usize) -> Vec<bool> {
    let mut mask = vec![false; size];
    for &x in members {
        mask[x] = true;
    }
    mask
}

/// First violated ideal axiom, as its name and the offending tuple.
fn ideal_violation(s: &TernaryGammaSemiring, inside: &[bool]) -> Option<(&'static str, Vec<usize>)> {
    let t = s.size();
    let g = s.gamma_size();
    if !inside[s.zero()] {
        return Some(("contains_zero", vec![s.zero()]));
    }
    for a in 0..t {
        for b in 0..t {
            if inside[a] && inside[b] && !inside[s.add(a, b)] {
                return Some(("closed_under_add", vec![a, b]));
            }
        }
    }
    for a in 0..t {
        for al in 0..g {
            for b in 0..t {
                for be in 0..g {
                    for c in 0..t {
                        if (inside[a] || inside[b] || inside[c]) && !inside[s.mul(a, al, b, be, c)] {
                            return Some(("absorbing", vec![a, al, b, be, c]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Every Γ-ideal of `s`, in increasing order of member bitmask.
pub fn enumerate_ideals(s: &Arc<TernaryGammaSemiring>, convention: &IdealConvention) -> Result<Vec<GammaIdeal>> {
    let t = s.size();
    if t > convention.max_carrier || t >= 63 {
        return Err(Error::ElementBudget {
            what: format!("subsets of {}", s.name()),
            needed: format!("2^{t}"),
            budget: convention.max_carrier,
        });
    }
    let z = s.zero();
    // subsets containing zero, indexed by the remaining elements
    let others: Vec<usize> = (0..t).filter(|&x| x != z).collect();
    let masks: Vec<u64> = (0..1u64 << others.len())
        .into_par_iter()
        .filter_map(|bits| {
            let mut inside = vec![false; t];
            inside[z] = true;
            let mut mask = 1u64 << z;
            for (k, &x) in others.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    inside[x] = true;
                    mask |= 1 << x;
                }
            }
            if !convention.improper_ideals && inside.iter().all(|&b| b) {
                return None;
            }
            ideal_violation(s, &inside).is_none().then_some(mask)
        })
        .collect();
    let mut masks = masks;
    masks.sort_unstable();
    Ok(masks
        .into_iter()
        .map(|m| GammaIdeal {
            semiring: s.clone(),
            members: (0..t).filter(|&x| m >> x & 1 == 1).collect(),
        })
        .collect())
}

/// A product landing in the ideal with no factor in the designated slots,
/// or `None` when the ideal is prime for the product condition. Properness
/// is not part of this test.
pub fn primality_witness(i: &GammaIdeal, primality: Primality) -> Option<[usize; 5]> {
    let s = &i.semiring;
    let (t, g) = (s.size(), s.gamma_size());
    for a in 0..t {
        for al in 0..g {
            for b in 0..t {
                for be in 0..g {
                    for c in 0..t {
                        if !i.contains(s.mul(a, al, b, be, c)) {
                            continue;
                        }
                        let caught = match primality {
                            Primality::AnySlot => i.contains(a) || i.contains(b) || i.contains(c),
                            Primality::OuterSlots => i.contains(a) || i.contains(c),
                        };
                        if !caught {
                            return Some([a, al, b, be, c]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Primality under the default convention: proper, and any product in the
/// ideal has a factor in it.
pub fn is_prime(i: &GammaIdeal) -> bool {
    is_prime_with(i, &IdealConvention::default())
}

pub fn is_prime_with(i: &GammaIdeal, convention: &IdealConvention) -> bool {
    (convention.improper_primes || i.is_proper()) && primality_witness(i, convention.primality).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn ideals(s: TernaryGammaSemiring) -> Vec<Vec<usize>> {
        enumerate_ideals(&Arc::new(s), &IdealConvention::default())
            .unwrap()
            .into_iter()
            .map(|i| i.members)
            .collect()
    }

    #[test]
    fn small_semirings() {
        assert_eq!(ideals(corpus::triv()), vec![vec![0]]);
        assert_eq!(ideals(corpus::b1()), vec![vec![0], vec![0, 1]]);
        assert_eq!(ideals(corpus::z3()), vec![vec![0], vec![0, 1, 2]]);
    }

    #[test]
    fn every_enumerated_ideal_replays() {
        for s in [corpus::b1(), corpus::z3(), corpus::b1_two_gammas(), corpus::mut1()] {
            let s = Arc::new(s);
            for i in enumerate_ideals(&s, &IdealConvention::default()).unwrap() {
                assert!(GammaIdeal::new(s.clone(), i.members.clone()).is_ok());
            }
        }
    }

    #[test]
    fn proper_only_convention_drops_the_full_ideal() {
        let conv = IdealConvention {
            improper_ideals: false,
            ..IdealConvention::default()
        };
        let got = enumerate_ideals(&Arc::new(corpus::triv()), &conv).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn primes_of_the_corpus() {
        for s in [corpus::b1(), corpus::z3()] {
            let s = Arc::new(s);
            let zero = GammaIdeal::new(s.clone(), vec![0]).unwrap();
            assert!(is_prime(&zero));
            let full = GammaIdeal::new(s.clone(), (0..s.size()).collect()).unwrap();
            assert!(!is_prime(&full));
            let lax = IdealConvention {
                improper_primes: true,
                ..IdealConvention::default()
            };
            assert!(is_prime_with(&full, &lax));
        }
    }

    #[test]
    fn a_subset_missing_absorption_is_rejected() {
        // {0, 1} in Z3 is not closed under addition
        let s = Arc::new(corpus::z3());
        assert!(GammaIdeal::new(s, vec![0, 1]).is_err());
    }

    #[test]
    fn bound_is_enforced() {
        let conv = IdealConvention {
            max_carrier: 1,
            ..IdealConvention::default()
        };
        assert!(enumerate_ideals(&Arc::new(corpus::b1()), &conv).is_err());
    }
}
