use std::collections::BTreeSet;

use rayon::prelude::*;

use super::angle::ThreeAngle;
use super::cone::{cone, cone_to_suspension};
use crate::algebra::ModuleMorphism;
use crate::config::WorkbenchConfig;
use crate::exactness::exactness_witness;
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::simplicial::{homology, induced_map, Homology};
use crate::{Error, Result};

/// The homology sequence of a 3-angle with its exactness checks.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub nmax: usize,
    /// Induced maps `[H(f), H(g), H(h), H(w)]` per degree.
    pub maps: Vec<Vec<ModuleMorphism>>,
    /// `δ_n: H_n(W) → H_{n-1}(X)` for `n = 1..=nmax`, when available.
    pub delta: Vec<Option<ModuleMorphism>>,
    pub report: AxiomReport,
}

impl LongExactSequence {
    pub fn delta_available(&self) -> bool {
        self.delta.iter().skip(1).all(|d| d.is_some())
    }
}

/// Canonical comparison between `H_n(ΣX)` and `H_{n-1}(X)`: normalized
/// chains `c` of the cone whose boundary lies in the base relate the class
/// of `c` in `ΣX` with the class of `d_0 c` in `X`. Returns the relation's
/// pairs.
fn suspension_comparison(
    angle: &ThreeAngle,
    hx: &Homology,
    hs: &Homology,
    n: usize,
    config: &WorkbenchConfig,
) -> Result<BTreeSet<(usize, usize)>> {
    let x = &angle.objects[0];
    let sx = &angle.objects[4];
    let c = cone(x, config.element_budget)?;
    let pi = cone_to_suspension(x, &c.object, sx)?;
    let hc = homology(&c.object, config.strict_zero)?;
    let term = &hc.complex.terms[n];
    let below = c.object.level(n - 1);
    let mut pairs = BTreeSet::new();
    for &e in &term.members {
        let d0 = c.object.face(n, 0).apply(e);
        let comps = below.components(d0);
        if comps[1..].iter().zip(&below.sum_factors().expect("cone level")[1..]).any(|(&v, f)| v != f.zero()) {
            continue;
        }
        let base = hx.class_of(n - 1, comps[0]).ok_or_else(|| {
            Error::Inconsistent(format!("a cone boundary in degree {} is not a cycle of the base", n - 1))
        })?;
        let top = hs.class_of(n, pi.level(n).apply(e)).ok_or_else(|| {
            Error::Inconsistent(format!("a cone chain in degree {n} does not give a cycle of the suspension"))
        })?;
        pairs.insert((top, base));
    }
    Ok(pairs)
}

/// The relation as a bijection table `H_n(ΣX) → H_{n-1}(X)`, if it is one.
fn as_bijection(pairs: &BTreeSet<(usize, usize)>, left: usize, right: usize) -> Option<Vec<usize>> {
    let mut table = vec![usize::MAX; left];
    let mut hit = vec![false; right];
    for &(a, b) in pairs {
        if table[a] != usize::MAX || hit[b] {
            return None;
        }
        table[a] = b;
        hit[b] = true;
    }
    (table.iter().all(|&t| t != usize::MAX) && hit.iter().all(|&h| h)).then_some(table)
}

/// Homology of `X → Y → Z → W → ΣX` in degrees `0..=nmax` with
/// `δ_n = (H_n(ΣX) ≅ H_{n-1}(X)) ∘ H_n(w)` where the canonical comparison is a
/// bijection. With every δ available, exactness (image equals preimage of
/// zero) is checked at every node; composites are checked in every case.
pub fn long_exact_sequence(
    angle: &ThreeAngle,
    nmax: usize,
    config: &WorkbenchConfig,
) -> Result<LongExactSequence> {
    let top = angle.objects[0].truncation();
    if nmax + 1 > top {
        return Err(Error::Precondition(format!(
            "degree {nmax} is not reliable at truncation {top}"
        )));
    }
    let hs: Vec<Homology> = angle
        .objects
        .par_iter()
        .map(|o| homology(o, config.strict_zero))
        .collect::<Result<_>>()?;
    let mut report = AxiomReport::new(format!("LES {}", angle.certificates.subject), config.strict_zero);
    let mut maps = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let row = (0..4)
            .map(|k| induced_map(&angle.maps[k], &hs[k], &hs[k + 1], n))
            .collect::<Result<Vec<_>>>()?;
        maps.push(row);
    }
    let mut delta = vec![None];
    let mut comparisons = Vec::new();
    for n in 1..=nmax {
        let pairs = suspension_comparison(angle, &hs[0], &hs[4], n, config)?;
        let left = hs[4].degrees[n].size();
        let right = hs[0].degrees[n - 1].size();
        let bijection = as_bijection(&pairs, left, right);
        comparisons.push(serde_json::json!({
            "degree": n,
            "pairs": pairs.len(),
            "bijective": bijection.is_some(),
        }));
        let d = match bijection {
            Some(table) => {
                let hw = &maps[n][3];
                let t = hw.table().iter().map(|&c| table[c]).collect();
                Some(ModuleMorphism::new(
                    format!("delta{n}"),
                    hs[3].degrees[n].module.clone(),
                    hs[0].degrees[n - 1].module.clone(),
                    t,
                )?)
            }
            None => None,
        };
        report.push(match &d {
            Some(_) => Check::pass(format!("delta_{n}"), Tier::Structural),
            None => Check::unavailable(format!("delta_{n}"), Tier::Structural),
        });
        delta.push(d);
    }
    report.artifact("suspension_comparison", comparisons);
    let available = delta.iter().skip(1).all(|d| d.is_some());
    report.artifact("delta_available", available);
    report.artifact(
        "homology_sizes",
        hs.iter()
            .map(|h| h.degrees[..=nmax].iter().map(|d| d.size()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    for n in (0..=nmax).rev() {
        let [hf, hg, hh, _] = [0, 1, 2, 3].map(|k| &maps[n][k]);
        composite(&mut report, &format!("composite_fg_{n}"), n, hf, hg);
        composite(&mut report, &format!("composite_gh_{n}"), n, hg, hh);
        if let Some(d) = delta.get(n).and_then(|d| d.as_ref()) {
            composite(&mut report, &format!("composite_hdelta_{n}"), n, hh, d);
            composite(&mut report, &format!("composite_deltaf_{n}"), n, d, &maps[n - 1][0]);
        }
        if !available {
            continue;
        }
        exact(&mut report, &format!("exact_Y_{n}"), n, hf, hg);
        exact(&mut report, &format!("exact_Z_{n}"), n, hg, hh);
        if n >= 1 {
            let d = delta[n].as_ref().expect("available");
            exact(&mut report, &format!("exact_W_{n}"), n, hh, d);
            exact(&mut report, &format!("exact_X_{}", n - 1), n - 1, d, &maps[n - 1][0]);
        } else {
            // H_0(W) → 0: the image of H_0(h) must be everything
            let missing = (0..hh.target().size()).find(|c| !hh.table().contains(c));
            report.push(Check::from_outcome(
                "exact_W_0",
                Tier::Axiom,
                missing.map(|c| Witness::new(vec![0, c], vec!["0".into(), hh.target().element_name(c)])),
            ));
        }
    }
    Ok(LongExactSequence {
        nmax,
        maps,
        delta,
        report,
    })
}

fn composite(report: &mut AxiomReport, name: &str, n: usize, a: &ModuleMorphism, b: &ModuleMorphism) {
    let z = b.target().zero();
    let hit = a.table().iter().position(|&v| b.apply(v) != z);
    report.push(Check::from_outcome(
        name,
        Tier::Axiom,
        hit.map(|c| Witness::new(vec![n, c], vec![n.to_string(), a.source().element_name(c)])),
    ));
}

fn exact(report: &mut AxiomReport, name: &str, n: usize, f: &ModuleMorphism, g: &ModuleMorphism) {
    let hit = exactness_witness(f, g);
    report.push(Check::from_outcome(
        name,
        Tier::Axiom,
        hit.map(|c| Witness::new(vec![n, c], vec![n.to_string(), f.target().element_name(c)])),
    ));
}

/// The two maps whose composite or exactness a check named `law` is about:
/// `(first, second)` with `first` applied first.
fn law_maps<'a>(seq: &'a LongExactSequence, law: &str) -> Option<(Option<&'a ModuleMorphism>, &'a ModuleMorphism)> {
    let (head, n) = law.rsplit_once('_')?;
    let n: usize = n.parse().ok()?;
    let map = |m: usize, k: usize| seq.maps.get(m).map(|row| &row[k]);
    let delta = |m: usize| seq.delta.get(m).and_then(|d| d.as_ref());
    Some(match head {
        "composite_fg" | "exact_Y" => (map(n, 0), map(n, 1)?),
        "composite_gh" | "exact_Z" => (map(n, 1), map(n, 2)?),
        "composite_hdelta" => (map(n, 2), delta(n)?),
        "composite_deltaf" => (delta(n), map(n.checked_sub(1)?, 0)?),
        "exact_W" if n == 0 => (map(0, 2), map(0, 2)?),
        "exact_W" => (map(n, 2), delta(n)?),
        "exact_X" => (delta(n + 1), map(n, 0)?),
        _ => return None,
    })
}

/// Whether `[n, c]` is a genuine violation of the check `law` of `seq`:
/// a class sent to nonzero by a composite, or a class lying in exactly one
/// of the image and the kernel.
pub fn les_violation(seq: &LongExactSequence, law: &str, v: &[usize]) -> bool {
    let [_, c] = v else { return false };
    let Some((first, second)) = law_maps(seq, law) else { return false };
    let Some(first) = first else { return false };
    if law.starts_with("composite") {
        return *c < first.source().size() && second.apply(first.apply(*c)) != second.target().zero();
    }
    if law == "exact_W_0" {
        return *c < first.target().size() && !first.table().contains(c);
    }
    *c < second.source().size() && (second.apply(*c) == second.target().zero()) != first.table().contains(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angulation::build_3_angle;
    use crate::corpus;

    #[test]
    fn witnesses_replay_and_made_up_ones_do_not() {
        let cfg = WorkbenchConfig::default();
        let a = build_3_angle(&corpus::z3_angle_base(3), &cfg).unwrap();
        let seq = long_exact_sequence(&a, 2, &cfg).unwrap();
        for c in seq.report.failures() {
            assert!(les_violation(&seq, &c.name, &c.witness.as_ref().unwrap().values), "{}", c.name);
        }
        assert!(!les_violation(&seq, "composite_fg_0", &[0, 0]));
        assert!(!les_violation(&seq, "no_such_law_0", &[0, 0]));
        assert!(!les_violation(&seq, "exact_Y_0", &[0, 99]));
    }

    #[test]
    fn identity_angle_is_exact() {
        let cfg = WorkbenchConfig::default();
        let x = corpus::constant(corpus::mb1(), 3);
        let a = build_3_angle(&crate::simplicial::SimplicialMorphism::identity(x), &cfg).unwrap();
        let seq = long_exact_sequence(&a, 2, &cfg).unwrap();
        assert!(seq.report.passed(), "{:?}", seq.report.failures().collect::<Vec<_>>());
    }
}
