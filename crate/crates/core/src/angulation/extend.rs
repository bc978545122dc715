use std::sync::Arc;

use super::angle::ThreeAngle;
use super::cone::{cone_of, induced_cone_map, require_square, same_simplicial_tables, suspension_map};
use crate::algebra::constrained_morphism_tables;
use crate::config::WorkbenchConfig;
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::simplicial::{SimplicialModule, SimplicialMorphism};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionMode {
    /// Induced on cones by the square.
    Canonical,
    /// Found by search after the canonical candidate failed.
    Searched,
}

#[derive(Clone, Debug)]
pub enum Extension {
    Found {
        phi: SimplicialMorphism,
        psi: SimplicialMorphism,
        mode: ExtensionMode,
        report: AxiomReport,
    },
    /// Nothing commutes; `exhaustive` is false when the budget ran out.
    NotFound { searched: u64, exhaustive: bool },
}

/// Completes `(u, v)` between the bases of two angles to `(φ, ψ)` with all
/// squares commuting on the nose.
pub fn extend_morphism(
    a: &ThreeAngle,
    b: &ThreeAngle,
    u: &SimplicialMorphism,
    v: &SimplicialMorphism,
    config: &WorkbenchConfig,
) -> Result<Extension> {
    require_square(&a.maps[0], &b.maps[0], u, v)?;
    let su = suspension_map(u, &a.objects[4], &b.objects[4]).ok();
    if let Some((phi, psi)) = canonical(a, b, u, v, config)? {
        let report = squares(a, b, v, &phi, &psi, su.as_ref())?;
        if report.passed() {
            return Ok(Extension::Found {
                phi,
                psi,
                mode: ExtensionMode::Canonical,
                report,
            });
        }
    }
    let mut budget = config.search_budget;
    let Some(su) = su else {
        return Ok(Extension::NotFound {
            searched: 0,
            exhaustive: false,
        });
    };
    let found = search_pair(a, b, v, &su, &mut budget);
    let searched = config.search_budget - budget;
    match found {
        Some(Some((phi, psi))) => {
            let report = squares(a, b, v, &phi, &psi, Some(&su))?;
            Ok(Extension::Found {
                phi,
                psi,
                mode: ExtensionMode::Searched,
                report,
            })
        }
        Some(None) => Ok(Extension::NotFound {
            searched,
            exhaustive: true,
        }),
        None => Ok(Extension::NotFound {
            searched,
            exhaustive: false,
        }),
    }
}

/// `φ = C(u, v)` and `ψ = C(v, φ)`, when both angles have cone shape.
fn canonical(
    a: &ThreeAngle,
    b: &ThreeAngle,
    u: &SimplicialMorphism,
    v: &SimplicialMorphism,
    config: &WorkbenchConfig,
) -> Result<Option<(SimplicialMorphism, SimplicialMorphism)>> {
    let cone_shaped = |t: &ThreeAngle, k: usize| -> Result<bool> {
        Ok(same_simplicial_tables(
            &cone_of(&t.maps[k], "c", config.element_budget)?,
            &t.objects[k + 2],
        ))
    };
    if !(cone_shaped(a, 0)? && cone_shaped(b, 0)? && cone_shaped(a, 1)? && cone_shaped(b, 1)?) {
        return Ok(None);
    }
    let phi = induced_cone_map(&a.objects[2], &b.objects[2], u, v, "phi")?;
    let psi = induced_cone_map(&a.objects[3], &b.objects[3], v, &phi, "psi")?;
    Ok(Some((phi, psi)))
}

fn squares(
    a: &ThreeAngle,
    b: &ThreeAngle,
    v: &SimplicialMorphism,
    phi: &SimplicialMorphism,
    psi: &SimplicialMorphism,
    su: Option<&SimplicialMorphism>,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("extension", true);
    let mut square = |name: &str, l: SimplicialMorphism, r: SimplicialMorphism| {
        let hit = (0..l.levels.len()).find_map(|n| {
            (0..l.level(n).source().size())
                .find(|&e| l.level(n).apply(e) != r.level(n).apply(e))
                .map(|e| vec![n, e])
        });
        report.push(Check::from_outcome(name, Tier::Structural, hit.map(Witness::unlabeled)));
    };
    square("square_g", a.maps[1].then(phi)?, v.then(&b.maps[1])?);
    square("square_h", a.maps[2].then(psi)?, phi.then(&b.maps[2])?);
    match su {
        Some(su) => square("square_w", a.maps[3].then(su)?, psi.then(&b.maps[3])?),
        None => report.push(Check::unavailable("square_w", Tier::Structural)),
    }
    Ok(report)
}

/// Search for `φ`, then for `ψ` given `φ`. `None` when out of budget.
fn search_pair(
    a: &ThreeAngle,
    b: &ThreeAngle,
    v: &SimplicialMorphism,
    su: &SimplicialMorphism,
    budget: &mut u64,
) -> Option<Option<(SimplicialMorphism, SimplicialMorphism)>> {
    let (z, z2) = (&a.objects[2], &b.objects[2]);
    let (w, w2) = (&a.objects[3], &b.objects[3]);
    let (g, g2) = (&a.maps[1], &b.maps[1]);
    let (h, h2) = (&a.maps[2], &b.maps[2]);
    let (wm, wm2) = (&a.maps[3], &b.maps[3]);
    // φ(g y) = g'(v y)
    let phi_forced: Vec<Vec<Option<usize>>> = (0..z.levels().len())
        .map(|n| {
            let mut f = vec![None; z.level(n).size()];
            for yy in 0..g.level(n).source().size() {
                f[g.level(n).apply(yy)] = Some(g2.level(n).apply(v.level(n).apply(yy)));
            }
            f
        })
        .collect();
    let mut result = None;
    let outcome = levelwise(z, z2, &|n, e, val| phi_forced[n][e].is_none_or(|t| t == val), budget, &mut |phi, budget| {
        let psi_forced: Vec<Vec<Option<usize>>> = (0..w.levels().len())
            .map(|n| {
                let mut f = vec![None; w.level(n).size()];
                for zz in 0..h.level(n).source().size() {
                    f[h.level(n).apply(zz)] = Some(h2.level(n).apply(phi[n][zz]));
                }
                f
            })
            .collect();
        let allowed = |n: usize, e: usize, val: usize| {
            psi_forced[n][e].is_none_or(|t| t == val)
                && wm2.level(n).apply(val) == su.level(n).apply(wm.level(n).apply(e))
        };
        let mut found = None;
        let r = levelwise(w, w2, &allowed, budget, &mut |psi, _| {
            found = Some(psi.to_vec());
            Some(true)
        });
        match r {
            None => None,
            Some(true) => {
                result = Some((phi.to_vec(), found.expect("found")));
                Some(true)
            }
            Some(false) => Some(false),
        }
    })?;
    if !outcome {
        return Some(None);
    }
    let (phi, psi) = result.expect("found");
    let phi = SimplicialMorphism::from_tables("phi", z.clone(), z2.clone(), phi).ok()?;
    let psi = SimplicialMorphism::from_tables("psi", w.clone(), w2.clone(), psi).ok()?;
    Some(Some((phi, psi)))
}

/// Depth-first over simplicial morphisms `x → y` satisfying `allowed`,
/// level by level. `accept` is called on each complete morphism and stops
/// the search by returning `Some(true)`; `None` propagates budget
/// exhaustion.
fn levelwise(
    x: &Arc<SimplicialModule>,
    y: &Arc<SimplicialModule>,
    allowed: &(dyn Fn(usize, usize, usize) -> bool + Sync),
    budget: &mut u64,
    accept: &mut dyn FnMut(&[Vec<usize>], &mut u64) -> Option<bool>,
) -> Option<bool> {
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    descend(x, y, allowed, budget, accept, &mut chosen)
}

fn descend(
    x: &Arc<SimplicialModule>,
    y: &Arc<SimplicialModule>,
    allowed: &(dyn Fn(usize, usize, usize) -> bool + Sync),
    budget: &mut u64,
    accept: &mut dyn FnMut(&[Vec<usize>], &mut u64) -> Option<bool>,
    chosen: &mut Vec<Vec<usize>>,
) -> Option<bool> {
    let n = chosen.len();
    if n > x.truncation() {
        return accept(chosen, budget);
    }
    let below = chosen.last().cloned();
    let fits = |e: usize, val: usize| -> bool {
        if !allowed(n, e, val) {
            return false;
        }
        let Some(below) = &below else { return true };
        (0..=n).all(|i| y.face(n, i).apply(val) == below[x.face(n, i).apply(e)])
            && (0..n).all(|i| {
                let e1 = x.face(n, i).apply(e);
                x.degeneracy(n - 1, i).apply(e1) != e || y.degeneracy(n - 1, i).apply(below[e1]) == val
            })
    };
    let candidates = constrained_morphism_tables(x.level(n), y.level(n), &fits, budget)?;
    for c in candidates {
        chosen.push(c);
        let r = descend(x, y, allowed, budget, accept, chosen)?;
        chosen.pop();
        if r {
            return Some(true);
        }
    }
    Some(false)
}
