//! Instance-level certification of Barr-exactness.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use super::congruence::{coequalizer, enumerate_congruences, kernel_pair, quotient};
use super::limits::{is_regular_epi, pullback};
use crate::algebra::{
    enumerate_morphisms, product_module, projection, ModuleMorphism, TernaryGammaModule,
};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::{Error, Result};

/// Modules together with morphisms between them; each morphism records the
/// indices of its source and target.
#[derive(Clone, Debug)]
pub struct BarrCorpus {
    pub modules: Vec<Arc<TernaryGammaModule>>,
    pub morphisms: Vec<(usize, usize, ModuleMorphism)>,
}

impl BarrCorpus {
    /// The modules with every morphism between every ordered pair.
    pub fn with_all_morphisms(modules: Vec<Arc<TernaryGammaModule>>, budget: u64) -> Result<Self> {
        let mut morphisms = Vec::new();
        for (i, a) in modules.iter().enumerate() {
            for (j, b) in modules.iter().enumerate() {
                for f in enumerate_morphisms(a, b, budget)? {
                    let name = format!("{}->{}#{}", a.name(), b.name(), f.name());
                    morphisms.push((i, j, f.renamed(name)));
                }
            }
        }
        Ok(BarrCorpus { modules, morphisms })
    }
}

pub const BARR_ITEMS: [&str; 5] = [
    "limits_and_colimits",
    "kernel_pairs_have_coequalizers",
    "regular_epis_stable_under_pullback",
    "equivalence_relations_effective",
    "regular_epi_iff_surjective",
];

/// Per-instance checker; `Ok(true)` means the instance is fine.
struct Barr<'a> {
    corpus: &'a BarrCorpus,
    element_budget: usize,
    search_budget: u64,
}

impl Barr<'_> {
    fn homs(&self, a: &Arc<TernaryGammaModule>, b: &Arc<TernaryGammaModule>) -> Result<Vec<ModuleMorphism>> {
        enumerate_morphisms(a, b, self.search_budget)
    }

    fn morphism(&self, i: usize) -> &ModuleMorphism {
        &self.corpus.morphisms[i].2
    }

    /// Instances of each item, as index tuples.
    fn instances(&self, item: &str) -> Vec<Vec<usize>> {
        let n = self.corpus.modules.len();
        let ms = &self.corpus.morphisms;
        match item {
            "limits_and_colimits" => {
                let mut v = Vec::new();
                for a in 0..n {
                    for b in 0..n {
                        v.push(vec![0, a, b]);
                    }
                }
                for (i, f) in ms.iter().enumerate() {
                    for (j, g) in ms.iter().enumerate() {
                        if f.1 == g.1 {
                            v.push(vec![1, i, j]);
                        }
                        if f.0 == g.0 && f.1 == g.1 {
                            v.push(vec![2, i, j]);
                        }
                    }
                }
                v
            }
            "kernel_pairs_have_coequalizers" | "regular_epi_iff_surjective" => {
                (0..ms.len()).map(|i| vec![i]).collect()
            }
            "regular_epis_stable_under_pullback" => {
                let mut v = Vec::new();
                for (i, f) in ms.iter().enumerate() {
                    for (j, g) in ms.iter().enumerate() {
                        if f.1 == g.1 {
                            v.push(vec![i, j]);
                        }
                    }
                }
                v
            }
            "equivalence_relations_effective" => {
                let mut v = Vec::new();
                for (a, m) in self.corpus.modules.iter().enumerate() {
                    let count = enumerate_congruences(m).map_or(0, |c| c.len());
                    for c in 0..count {
                        v.push(vec![a, c]);
                    }
                }
                v
            }
            _ => Vec::new(),
        }
    }

    fn holds(&self, item: &str, w: &[usize]) -> Result<bool> {
        match (item, w) {
            ("limits_and_colimits", &[0, a, b]) => self.product_universal(a, b),
            ("limits_and_colimits", &[1, i, j]) => self.pullback_universal(i, j),
            ("limits_and_colimits", &[2, i, j]) => self.coequalizer_universal(i, j),
            ("kernel_pairs_have_coequalizers", &[i]) => {
                let f = self.morphism(i);
                let (_, k0, k1) = pullback(f, f, self.element_budget)?;
                let (_, q) = coequalizer(&k0, &k1)?;
                Ok(kernel_pair(&q) == kernel_pair(f))
            }
            ("regular_epis_stable_under_pullback", &[i, j]) => {
                let f = self.morphism(i);
                if !is_regular_epi(f)?.0 {
                    return Ok(true);
                }
                let g = self.morphism(j);
                let (_, _, pulled) = pullback(f, g, self.element_budget)?;
                Ok(is_regular_epi(&pulled)?.0)
            }
            ("equivalence_relations_effective", &[a, c]) => {
                let m = &self.corpus.modules[a];
                let cong = enumerate_congruences(m)?
                    .into_iter()
                    .nth(c)
                    .ok_or_else(|| Error::Precondition("no such congruence".into()))?;
                let (_, proj) = quotient(&cong)?;
                Ok(kernel_pair(&proj) == cong)
            }
            ("regular_epi_iff_surjective", &[i]) => {
                let f = self.morphism(i);
                Ok(is_regular_epi(f)?.0 == f.is_surjective())
            }
            _ => Err(Error::Precondition(format!("unknown instance {item} {w:?}"))),
        }
    }

    /// Every pair `f: X → A`, `g: X → B` factors uniquely through `A × B`.
    fn product_universal(&self, a: usize, b: usize) -> Result<bool> {
        let (ma, mb) = (&self.corpus.modules[a], &self.corpus.modules[b]);
        let p = Arc::new(product_module(ma, mb, self.element_budget)?);
        let (p0, p1) = (projection(&p, 0)?, projection(&p, 1)?);
        for x in &self.corpus.modules {
            let into = self.homs(x, &p)?;
            let composites: Vec<(Vec<usize>, Vec<usize>)> = into
                .iter()
                .map(|h| Ok((h.then(&p0)?.table().to_vec(), h.then(&p1)?.table().to_vec())))
                .collect::<Result<_>>()?;
            for f in self.homs(x, ma)? {
                for g in self.homs(x, mb)? {
                    let hits = composites
                        .iter()
                        .filter(|(u, v)| u == f.table() && v == g.table())
                        .count();
                    if hits != 1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every commuting pair `u: X → A`, `v: X → B` with `f u = g v` factors
    /// uniquely through the pullback.
    fn pullback_universal(&self, i: usize, j: usize) -> Result<bool> {
        let (f, g) = (self.morphism(i), self.morphism(j));
        let (p, l, r) = pullback(f, g, self.element_budget)?;
        for x in &self.corpus.modules {
            let into = self.homs(x, &p)?;
            let composites: Vec<(Vec<usize>, Vec<usize>)> = into
                .iter()
                .map(|h| Ok((h.then(&l)?.table().to_vec(), h.then(&r)?.table().to_vec())))
                .collect::<Result<_>>()?;
            let vs = self.homs(x, g.source())?;
            for u in self.homs(x, f.source())? {
                let fu = u.then(f)?;
                for v in &vs {
                    if v.then(g)? != fu {
                        continue;
                    }
                    let hits = composites
                        .iter()
                        .filter(|(a, b)| a == u.table() && b == v.table())
                        .count();
                    if hits != 1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every `h` with `h f = h g` factors uniquely through the coequalizer.
    fn coequalizer_universal(&self, i: usize, j: usize) -> Result<bool> {
        let (f, g) = (self.morphism(i), self.morphism(j));
        let (q, proj) = coequalizer(f, g)?;
        if !(f.then(&proj)? == g.then(&proj)?) {
            return Ok(false);
        }
        for x in &self.corpus.modules {
            let from_q: Vec<Vec<usize>> = self
                .homs(&q, x)?
                .iter()
                .map(|k| Ok(proj.then(k)?.table().to_vec()))
                .collect::<Result<_>>()?;
            for h in self.homs(f.target(), x)? {
                if f.then(&h)? != g.then(&h)? {
                    continue;
                }
                if from_q.iter().filter(|t| t.as_slice() == h.table()).count() != 1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn label(&self, item: &str, w: &[usize]) -> Vec<String> {
        let m = |i: usize| self.corpus.modules[i].name().to_string();
        let f = |i: usize| self.morphism(i).name().to_string();
        match (item, w) {
            ("limits_and_colimits", &[0, a, b]) => vec!["product".into(), m(a), m(b)],
            ("limits_and_colimits", &[1, i, j]) => vec!["pullback".into(), f(i), f(j)],
            ("limits_and_colimits", &[2, i, j]) => vec!["coequalizer".into(), f(i), f(j)],
            ("equivalence_relations_effective", &[a, c]) => vec![m(a), format!("congruence {c}")],
            (_, ws) => ws.iter().map(|&i| f(i)).collect(),
        }
    }
}

/// Certifies on the given instances: finite limits and colimits with their
/// universal properties, coequalizers of kernel pairs, pullback stability
/// of regular epimorphisms, and effectiveness of every congruence. Instances
/// that exceed the budgets are skipped and counted in the `coverage`
/// artifact.
pub fn check_barr_exactness(
    corpus: &BarrCorpus,
    element_budget: usize,
    search_budget: u64,
) -> AxiomReport {
    let barr = Barr {
        corpus,
        element_budget,
        search_budget,
    };
    let mut report = AxiomReport::new("barr", true);
    let mut coverage = serde_json::Map::new();
    for item in BARR_ITEMS {
        let instances = barr.instances(item);
        let outcomes: Vec<Result<bool>> = instances
            .par_iter()
            .map(|w| barr.holds(item, w))
            .collect();
        let skipped = outcomes.iter().filter(|o| is_budget(o)).count();
        let first_bad = outcomes
            .iter()
            .position(fails)
            .map(|k| instances[k].clone());
        let tier = if item == "regular_epi_iff_surjective" {
            Tier::Structural
        } else {
            Tier::Axiom
        };
        report.push(Check::from_outcome(
            item,
            tier,
            first_bad.map(|w| Witness::new(w.clone(), barr.label(item, &w))),
        ));
        coverage.insert(
            item.to_string(),
            json!({"instances": instances.len(), "skipped": skipped}),
        );
    }
    report.artifact(
        "corpus",
        json!({"modules": corpus.modules.len(), "morphisms": corpus.morphisms.len()}),
    );
    report.artifact("coverage", serde_json::Value::Object(coverage));
    report
}

/// Re-decides one instance named by a witness; `true` means it fails.
pub fn barr_violation(
    corpus: &BarrCorpus,
    item: &str,
    witness: &[usize],
    element_budget: usize,
    search_budget: u64,
) -> bool {
    let barr = Barr {
        corpus,
        element_budget,
        search_budget,
    };
    fails(&barr.holds(item, witness))
}

fn is_budget(outcome: &Result<bool>) -> bool {
    matches!(
        outcome,
        Err(Error::SearchSpaceTooLarge { .. } | Error::ElementBudget { .. })
    )
}

/// A construction that breaks (rather than running out of budget) counts
/// as a failure of the instance.
fn fails(outcome: &Result<bool>) -> bool {
    matches!(outcome, Ok(false)) || (outcome.is_err() && !is_budget(outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn zero_module_with_identity_passes() {
        let z = Arc::new(corpus::zero_b1());
        let c = BarrCorpus {
            modules: vec![z.clone()],
            morphisms: vec![(0, 0, ModuleMorphism::identity(z))],
        };
        let r = check_barr_exactness(&c, 64, 1 << 16);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn broken_morphism_is_caught_and_replays() {
        // a non-linear map masquerading as a morphism breaks the kernel
        // pair round trip
        let m = Arc::new(corpus::mz3());
        let bad = ModuleMorphism::new("bad", m.clone(), m.clone(), vec![0, 0, 1]).unwrap();
        let c = BarrCorpus {
            modules: vec![m.clone()],
            morphisms: vec![(0, 0, bad)],
        };
        let r = check_barr_exactness(&c, 64, 1 << 16);
        let failed: Vec<_> = r.failures().collect();
        assert!(!failed.is_empty());
        for f in failed {
            assert!(barr_violation(&c, &f.name, &f.witness.as_ref().unwrap().values, 64, 1 << 16));
        }
    }
}
