use std::sync::Arc;

use serde::Serialize;

use super::angle::ThreeAngle;
use super::les::long_exact_sequence;
use crate::algebra::TernaryGammaSemiring;
use crate::config::WorkbenchConfig;
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::simplicial::{homology, SimplicialMorphism};
use crate::Result;

/// Self-maps of Γ that leave the product table unchanged, read as the
/// monoid acting on homology.
#[derive(Clone, Debug, Serialize)]
pub struct GammaEndomorphismMonoid {
    pub gamma_size: usize,
    /// Each element as its table `α ↦ γα`, in lexicographic order.
    pub elements: Vec<Vec<usize>>,
    /// `composition[a][b]` is the index of `a ∘ b` (apply `b` first).
    pub composition: Vec<Vec<usize>>,
    pub identity: usize,
}

impl GammaEndomorphismMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn all_self_maps(g: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; g];
    loop {
        out.push(cur.clone());
        let mut i = g;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < g {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Enumerates the stabilizer monoid of the product table and checks that it
/// is a monoid.
pub fn gamma_endomorphisms(s: &TernaryGammaSemiring) -> (GammaEndomorphismMonoid, AxiomReport) {
    let g = s.gamma_size();
    let elements: Vec<Vec<usize>> = all_self_maps(g).into_iter().filter(|m| s.stabilized_by(m)).collect();
    let index = |m: &[usize]| elements.iter().position(|e| e == m);
    let id: Vec<usize> = (0..g).collect();
    let mut report = AxiomReport::new(format!("E_Gamma({})", s.name()), true);
    let identity = index(&id);
    report.push(Check::from_outcome(
        "contains_identity",
        Tier::Structural,
        identity.is_none().then(|| Witness::unlabeled(id.clone())),
    ));
    let mut composition = vec![vec![usize::MAX; elements.len()]; elements.len()];
    let mut escape = None;
    for (a, ea) in elements.iter().enumerate() {
        for (b, eb) in elements.iter().enumerate() {
            let ab: Vec<usize> = eb.iter().map(|&x| ea[x]).collect();
            match index(&ab) {
                Some(c) => composition[a][b] = c,
                None => {
                    escape.get_or_insert_with(|| Witness::unlabeled(vec![a, b]));
                }
            }
        }
    }
    report.push(Check::from_outcome("closed_under_composition", Tier::Structural, escape));
    report.artifact("size", elements.len());
    report.artifact("elements", &elements);
    (
        GammaEndomorphismMonoid {
            gamma_size: g,
            elements,
            composition,
            identity: identity.unwrap_or(usize::MAX),
        },
        report,
    )
}

/// The angle with every level's parameter indices relabeled by `gamma_map`
/// and every map kept as the same table.
pub fn relabel_angle(angle: &ThreeAngle, gamma_map: &[usize]) -> Result<ThreeAngle> {
    let objects = angle
        .objects
        .iter()
        .map(|o| o.relabel_gammas(gamma_map).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let maps = angle
        .maps
        .iter()
        .enumerate()
        .map(|(k, f)| {
            SimplicialMorphism::from_tables(
                f.name.clone(),
                objects[k].clone(),
                objects[k + 1].clone(),
                f.levels.iter().map(|l| l.table().to_vec()).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThreeAngle {
        objects,
        maps,
        rotations: angle.rotations,
        certificates: angle.certificates.clone(),
    })
}

/// Recomputes homology and the long exact sequence of `angle` after
/// relabeling by every element of `monoid`. The action is the identity on
/// representatives exactly when every homology congruence and every
/// sequence map comes out unchanged; then the sequence is one of
/// `E_Γ`-modules.
pub fn gamma_action(
    angle: &ThreeAngle,
    monoid: &GammaEndomorphismMonoid,
    nmax: usize,
    config: &WorkbenchConfig,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(format!("E_Gamma action on {}", angle.certificates.subject), config.strict_zero);
    let base_h = angle
        .objects
        .iter()
        .map(|o| homology(o, config.strict_zero))
        .collect::<Result<Vec<_>>>()?;
    let base_les = long_exact_sequence(angle, nmax, config)?;
    for (k, gamma) in monoid.elements.iter().enumerate() {
        let moved = relabel_angle(angle, gamma)?;
        let mut moved_class = None;
        'objects: for (i, o) in moved.objects.iter().enumerate() {
            let h = homology(o, config.strict_zero)?;
            for (n, (a, b)) in base_h[i].degrees.iter().zip(&h.degrees).enumerate() {
                if a.cycle_members != b.cycle_members || a.projection.table() != b.projection.table() {
                    moved_class = Some(Witness::unlabeled(vec![k, i, n]));
                    break 'objects;
                }
            }
        }
        report.push(Check::from_outcome(format!("gamma{k}_homology_invariant"), Tier::Structural, moved_class));
        let les = long_exact_sequence(&moved, nmax, config)?;
        let mut moved_map = None;
        'degrees: for n in 0..=nmax {
            for j in 0..4 {
                if les.maps[n][j].table() != base_les.maps[n][j].table() {
                    moved_map = Some(Witness::unlabeled(vec![k, n, j]));
                    break 'degrees;
                }
            }
            let same_delta = match (&les.delta[n], &base_les.delta[n]) {
                (Some(a), Some(b)) => a.table() == b.table(),
                (None, None) => true,
                _ => false,
            };
            if !same_delta {
                moved_map = Some(Witness::unlabeled(vec![k, n, 4]));
                break;
            }
        }
        report.push(Check::from_outcome(format!("gamma{k}_les_commutes"), Tier::Structural, moved_map));
    }
    report.artifact("sequence_of_e_gamma_modules", report.passed());
    Ok(report)
}
