use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::ideal::{enumerate_ideals, is_prime_with, GammaIdeal, IdealConvention};
use crate::algebra::TernaryGammaSemiring;
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::{Error, Result};

/// A finite topological space: named points and the list of opens, each a
/// sorted list of point indices. Opens are kept sorted by size, then
/// lexicographically, so the empty set comes first and the whole space last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteSpace {
    pub points: Vec<String>,
    pub opens: Vec<Vec<usize>>,
}

impl FiniteSpace {
    /// Sorts and deduplicates the opens; does not check the axioms.
    pub fn new(points: Vec<String>, opens: Vec<Vec<usize>>) -> Result<Self> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mut o in opens {
            o.sort_unstable();
            o.dedup();
            if let Some(&p) = o.iter().find(|&&p| p >= points.len()) {
                return Err(Error::malformed("space", format!("point {p} out of range")));
            }
            set.insert(o);
        }
        let mut opens: Vec<Vec<usize>> = set.into_iter().collect();
        opens.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(FiniteSpace { points, opens })
    }

    /// Every subset open.
    pub fn discrete(points: Vec<String>) -> Self {
        let n = points.len();
        let opens = (0..1usize << n)
            .map(|m| (0..n).filter(|&p| m >> p & 1 == 1).collect())
            .collect();
        FiniteSpace::new(points, opens).expect("discrete space")
    }

    pub fn index_of(&self, open: &[usize]) -> Option<usize> {
        self.opens.iter().position(|o| o == open)
    }

    pub fn whole(&self) -> Vec<usize> {
        (0..self.points.len()).collect()
    }

    pub fn is_subset(&self, small: usize, big: usize) -> bool {
        self.opens[small].iter().all(|p| self.opens[big].binary_search(p).is_ok())
    }

    pub fn intersection(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(&intersect(&self.opens[a], &self.opens[b]))
    }

    pub fn union(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(&unite(&self.opens[a], &self.opens[b]))
    }

    pub fn open_label(&self, o: usize) -> String {
        let names: Vec<&str> = self.opens[o].iter().map(|&p| self.points[p].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

pub(crate) fn unite(a: &[usize], b: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    s.into_iter().collect()
}

fn complement(a: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|x| a.binary_search(x).is_err()).collect()
}

/// The axioms of a topology on a finite space: empty set, whole space,
/// pairwise unions and intersections.
pub fn check_topology(space: &FiniteSpace) -> AxiomReport {
    let mut report = AxiomReport::new("topology", true);
    let empty = space.index_of(&[]);
    report.push(Check::from_outcome("contains_empty", Tier::Structural, empty.is_none().then(|| Witness::unlabeled(vec![]))));
    let whole = space.index_of(&space.whole());
    report.push(Check::from_outcome("contains_whole", Tier::Structural, whole.is_none().then(|| Witness::unlabeled(vec![]))));
    let n = space.opens.len();
    let pair = |f: &dyn Fn(usize, usize) -> Option<usize>| {
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| f(a, b).is_none())
            .map(|(a, b)| Witness::new(vec![a, b], vec![space.open_label(a), space.open_label(b)]))
    };
    report.push(Check::from_outcome("closed_under_union", Tier::Structural, pair(&|a, b| space.union(a, b))));
    report.push(Check::from_outcome("closed_under_intersection", Tier::Structural, pair(&|a, b| space.intersection(a, b))));
    report
}

/// A closed set `V(I)` with the ideals that produce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedSet {
    pub points: Vec<usize>,
    /// Indices into [`SpecSpace::ideals`].
    pub generators: Vec<usize>,
}

/// The prime spectrum with its Zariski-type topology.
#[derive(Clone, Debug)]
pub struct SpecSpace {
    pub semiring: Arc<TernaryGammaSemiring>,
    pub convention: IdealConvention,
    pub ideals: Vec<GammaIdeal>,
    /// Primes among the ideals; point `k` is `ideals[prime_indices[k]]`.
    pub prime_indices: Vec<usize>,
    pub closed_sets: Vec<ClosedSet>,
    pub space: FiniteSpace,
    /// Opens added by closing the raw complements under union and
    /// intersection.
    pub added_opens: Vec<Vec<usize>>,
}

impl SpecSpace {
    pub fn points(&self) -> Vec<&GammaIdeal> {
        self.prime_indices.iter().map(|&k| &self.ideals[k]).collect()
    }

    /// `V(I)` for an ideal given by its index.
    pub fn vanishing(&self, ideal: usize) -> Vec<usize> {
        vanishing(&self.ideals, &self.prime_indices, &self.ideals[ideal])
    }
}

fn vanishing(ideals: &[GammaIdeal], primes: &[usize], i: &GammaIdeal) -> Vec<usize> {
    primes
        .iter()
        .enumerate()
        .filter(|(_, &p)| i.is_subset_of(&ideals[p]))
        .map(|(k, _)| k)
        .collect()
}

/// Primes, the closed sets `V(I)` over every enumerated ideal, and the
/// topology generated by their complements.
pub fn spec(s: &Arc<TernaryGammaSemiring>, convention: &IdealConvention) -> Result<SpecSpace> {
    let ideals = enumerate_ideals(s, convention)?;
    let prime_indices: Vec<usize> = (0..ideals.len()).filter(|&k| is_prime_with(&ideals[k], convention)).collect();
    let n = prime_indices.len();
    let mut closed_sets: Vec<ClosedSet> = Vec::new();
    for (k, i) in ideals.iter().enumerate() {
        let v = vanishing(&ideals, &prime_indices, i);
        match closed_sets.iter_mut().find(|c| c.points == v) {
            Some(c) => c.generators.push(k),
            None => closed_sets.push(ClosedSet {
                points: v,
                generators: vec![k],
            }),
        }
    }
    closed_sets.sort_by(|a, b| a.points.len().cmp(&b.points.len()).then_with(|| a.points.cmp(&b.points)));
    let raw: BTreeSet<Vec<usize>> = closed_sets.iter().map(|c| complement(&c.points, n)).collect();
    let mut opens = raw.clone();
    opens.insert(Vec::new());
    opens.insert((0..n).collect());
    loop {
        let current: Vec<Vec<usize>> = opens.iter().cloned().collect();
        let before = opens.len();
        for a in &current {
            for b in &current {
                opens.insert(unite(a, b));
                opens.insert(intersect(a, b));
            }
        }
        if opens.len() == before {
            break;
        }
    }
    let added_opens: Vec<Vec<usize>> = opens.iter().filter(|o| !raw.contains(*o)).cloned().collect();
    let names = prime_indices.iter().map(|&k| ideals[k].label()).collect();
    let space = FiniteSpace::new(names, opens.into_iter().collect())?;
    Ok(SpecSpace {
        semiring: s.clone(),
        convention: convention.clone(),
        ideals,
        prime_indices,
        closed_sets,
        space,
        added_opens,
    })
}

/// Topology axioms, closedness of every `V(I)`, of `V(I) ∪ V(J)` and
/// `V(I) ∩ V(J)`, antitonicity of `V`, and `V({0}) =` all points.
pub fn check_spec(sp: &SpecSpace) -> AxiomReport {
    let mut report = AxiomReport::new(format!("Spec({})", sp.semiring.name()), true);
    report.absorb("topology", check_topology(&sp.space));
    let n = sp.space.points.len();
    let closed = |v: &[usize]| sp.space.index_of(&complement(v, n)).is_some();
    let m = sp.ideals.len();
    let vs: Vec<Vec<usize>> = (0..m).map(|k| sp.vanishing(k)).collect();
    let labels = |a: usize, b: usize| vec![sp.ideals[a].label(), sp.ideals[b].label()];
    report.push(Check::from_outcome(
        "vanishing_closed",
        Tier::Structural,
        (0..m).find(|&k| !closed(&vs[k])).map(|k| Witness::new(vec![k], vec![sp.ideals[k].label()])),
    ));
    let pairs = || (0..m).flat_map(move |a| (0..m).map(move |b| (a, b)));
    report.push(Check::from_outcome(
        "vanishing_union_closed",
        Tier::Structural,
        pairs().find(|&(a, b)| !closed(&unite(&vs[a], &vs[b]))).map(|(a, b)| Witness::new(vec![a, b], labels(a, b))),
    ));
    report.push(Check::from_outcome(
        "vanishing_intersection_closed",
        Tier::Structural,
        pairs()
            .find(|&(a, b)| !closed(&intersect(&vs[a], &vs[b])))
            .map(|(a, b)| Witness::new(vec![a, b], labels(a, b))),
    ));
    report.push(Check::from_outcome(
        "vanishing_antitone",
        Tier::Structural,
        pairs()
            .find(|&(a, b)| sp.ideals[a].is_subset_of(&sp.ideals[b]) && !vs[b].iter().all(|p| vs[a].contains(p)))
            .map(|(a, b)| Witness::new(vec![a, b], labels(a, b))),
    ));
    let zero = sp.ideals.iter().position(|i| i.members == vec![sp.semiring.zero()]);
    // {0} is an ideal only when zero absorbs; otherwise there is nothing to check
    match zero {
        Some(z) => report.push(Check::from_outcome(
            "vanishing_of_zero_is_everything",
            Tier::Structural,
            (vs[z].len() != n).then(|| Witness::new(vec![z], vec![sp.ideals[z].label()])),
        )),
        None => report.push(Check::unavailable("vanishing_of_zero_is_everything", Tier::Structural)),
    }
    report.artifact("convention", &sp.convention);
    report.artifact("points", &sp.space.points);
    report.artifact("opens", &sp.space.opens);
    report.artifact("closed_sets", &sp.closed_sets);
    report.artifact("added_opens", &sp.added_opens);
    report
}

/// Replays a `check_spec` witness: true when it still violates `law`.
pub fn spec_violation(sp: &SpecSpace, law: &str, v: &[usize]) -> bool {
    let n = sp.space.points.len();
    let m = sp.ideals.len();
    if v.iter().any(|&k| k >= m) {
        return false;
    }
    let closed = |p: &[usize]| sp.space.index_of(&complement(p, n)).is_some();
    match (law, v) {
        ("vanishing_closed", [a]) => !closed(&sp.vanishing(*a)),
        ("vanishing_union_closed", [a, b]) => !closed(&unite(&sp.vanishing(*a), &sp.vanishing(*b))),
        ("vanishing_intersection_closed", [a, b]) => !closed(&intersect(&sp.vanishing(*a), &sp.vanishing(*b))),
        ("vanishing_antitone", [a, b]) => {
            sp.ideals[*a].is_subset_of(&sp.ideals[*b]) && !sp.vanishing(*b).iter().all(|p| sp.vanishing(*a).contains(p))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn one_point_spectra() {
        for s in [corpus::b1(), corpus::z3()] {
            let sp = spec(&Arc::new(s), &IdealConvention::default()).unwrap();
            assert_eq!(sp.space.points, vec!["{0}".to_string()]);
            assert_eq!(sp.space.opens, vec![vec![], vec![0]]);
            assert!(check_spec(&sp).passed());
        }
    }

    #[test]
    fn trivial_semiring_follows_the_convention() {
        let s = Arc::new(corpus::triv());
        let strict = spec(&s, &IdealConvention::default()).unwrap();
        assert!(strict.space.points.is_empty());
        assert!(check_spec(&strict).passed());
        let lax = IdealConvention {
            improper_primes: true,
            ..IdealConvention::default()
        };
        let sp = spec(&s, &lax).unwrap();
        assert_eq!(sp.space.points.len(), 1);
    }

    #[test]
    fn discrete_space_is_a_topology() {
        let d = FiniteSpace::discrete(vec!["p".into(), "q".into()]);
        assert_eq!(d.opens, vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert!(check_topology(&d).passed());
        let broken = FiniteSpace::new(vec!["p".into(), "q".into()], vec![vec![], vec![0], vec![1]]).unwrap();
        let r = check_topology(&broken);
        assert!(!r.passed());
        assert!(r.check("contains_whole").is_some_and(|c| !c.passed()));
    }
}
