use std::sync::Arc;

use crate::algebra::{ModuleMorphism, TernaryGammaModule};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::simplicial::{
    check_homotopy, check_simplicial, homology, homotopy_from_components, interval_degeneracy,
    interval_face, sum_map, Homotopy, SimplicialModule, SimplicialMorphism,
};
use crate::{Error, Result};

// Cones are the pushout of `Y ← X → X ⊗ Δ[1]` with the 0-end copy of `X`
// collapsed. Only the summands that survive are stored: level `n` of
// `C(f)` is `Y_n ⊕ X_n^n`, component 0 being `Y_n` (the 1-end, where `X`
// is glued along `f`) and component `j` the copy of `X_n` on the
// nondegenerate-at-both-ends simplex of Δ[1] with `j` vertices at 0.

/// `C(f)` for `f: X → Y`.
pub fn cone_of(f: &SimplicialMorphism, name: &str, element_budget: usize) -> Result<SimplicialModule> {
    let (x, y) = (&f.source, &f.target);
    let top = x.truncation();
    let mut levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut factors = vec![y.level(n).clone()];
        factors.extend(std::iter::repeat_n(x.level(n).clone(), n));
        levels.push(Arc::new(TernaryGammaModule::direct_sum(
            format!("{name}_{n}"),
            factors,
            element_budget,
        )?));
    }
    let mut faces = vec![Vec::new(); top + 1];
    let mut degens = vec![Vec::new(); top + 1];
    for n in 0..=top {
        if n >= 1 {
            for i in 0..=n {
                let glued = x.face(n, i).then(f.level(n - 1))?;
                let mut parts: Vec<(usize, usize, &ModuleMorphism)> = vec![(0, 0, y.face(n, i))];
                for j in 1..=n {
                    match interval_face(i, j) {
                        0 => parts.push((j, 0, &glued)),
                        t if t == n => {}
                        t => parts.push((j, t, x.face(n, i))),
                    }
                }
                faces[n].push(sum_map(&levels[n], &levels[n - 1], &parts));
            }
        }
        if n < top {
            for i in 0..=n {
                let mut parts: Vec<(usize, usize, &ModuleMorphism)> = vec![(0, 0, y.degeneracy(n, i))];
                for j in 1..=n {
                    parts.push((j, interval_degeneracy(i, j), x.degeneracy(n, i)));
                }
                degens[n].push(sum_map(&levels[n], &levels[n + 1], &parts));
            }
        }
    }
    SimplicialModule::from_tables(name, levels, faces, degens)
}

/// The map `C(f) → C(f')` induced by a commuting square `v ∘ f = f' ∘ u`.
pub fn induced_cone_map(
    source: &Arc<SimplicialModule>,
    target: &Arc<SimplicialModule>,
    u: &SimplicialMorphism,
    v: &SimplicialMorphism,
    name: &str,
) -> Result<SimplicialMorphism> {
    let top = source.truncation();
    let tables = (0..=top)
        .map(|n| {
            let mut parts: Vec<(usize, usize, &ModuleMorphism)> = vec![(0, 0, v.level(n))];
            for j in 1..=n {
                parts.push((j, j, u.level(n)));
            }
            sum_map(source.level(n), target.level(n), &parts)
        })
        .collect();
    SimplicialMorphism::from_tables(name, source.clone(), target.clone(), tables)
}

/// Table of `e ↦ g(components(e)[i])`.
pub(crate) fn through_component(src: &TernaryGammaModule, i: usize, g: &ModuleMorphism) -> Vec<usize> {
    (0..src.size()).map(|e| g.apply(src.components(e)[i])).collect()
}

/// Table of `y ↦ (y, 0, …, 0)` into a cone level.
pub(crate) fn into_first(src: &TernaryGammaModule, dst: &TernaryGammaModule) -> Vec<usize> {
    let zeros: Vec<usize> = dst
        .sum_factors()
        .map(|fs| fs.iter().map(|f| f.zero()).collect())
        .unwrap_or_else(|| vec![dst.zero()]);
    (0..src.size())
        .map(|e| {
            let mut parts = zeros.clone();
            parts[0] = e;
            dst.encode(&parts)
        })
        .collect()
}

/// The canonical map `Y → C(f)`.
pub(crate) fn base_inclusion(
    y: &Arc<SimplicialModule>,
    c: &Arc<SimplicialModule>,
    name: &str,
) -> Result<SimplicialMorphism> {
    let tables = (0..=y.truncation())
        .map(|n| into_first(y.level(n), c.level(n)))
        .collect();
    SimplicialMorphism::from_tables(name, y.clone(), c.clone(), tables)
}

/// `X ⊗ Δ[1]` with the 0-end collapsed, its inclusion at the 1-end and the
/// explicit contraction.
#[derive(Clone, Debug)]
pub struct Cone {
    pub object: Arc<SimplicialModule>,
    pub inclusion: SimplicialMorphism,
    /// Homotopy from the zero map (0-end) to the identity (1-end).
    pub contraction: Homotopy,
    pub certificate: AxiomReport,
}

pub fn cone(x: &Arc<SimplicialModule>, element_budget: usize) -> Result<Cone> {
    let id = SimplicialMorphism::identity(x.clone());
    let object = Arc::new(cone_of(&id, &format!("C({})", x.name()), element_budget)?);
    let inclusion = base_inclusion(x, &object, "incl")?;
    let contraction = cone_contraction(&object)?;
    let identity = SimplicialMorphism::identity(object.clone());
    let zero = SimplicialMorphism::zero(object.clone(), object.clone())?;
    let mut certificate = AxiomReport::new(object.name(), true);
    certificate.absorb("object", check_simplicial(&object));
    let replay = check_homotopy(&contraction, &zero, &identity);
    certificate.push(Check::from_outcome(
        "contraction",
        Tier::Strong,
        replay.failures().next().map(|c| c.witness.clone().unwrap_or_else(|| Witness::unlabeled(vec![]))),
    ));
    Ok(Cone {
        object,
        inclusion,
        contraction,
        certificate,
    })
}

/// On `C(id_X)`: the component on the simplex `τ` of Δ[1] at the simplex
/// `σ` goes to the component on `τ ∧ σ` (pointwise minimum), which is the
/// collapsed 0-end when `σ` is constant at 0.
fn cone_contraction(c: &SimplicialModule) -> Result<Homotopy> {
    let top = c.truncation();
    let mut tables = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let factors = c.level(n).sum_factors().expect("cone level").to_vec();
        let ids: Vec<ModuleMorphism> = factors.iter().map(|f| ModuleMorphism::identity(f.clone())).collect();
        let mut row = Vec::with_capacity(n + 2);
        for sigma in 0..n + 2 {
            let parts: Vec<(usize, usize, &ModuleMorphism)> = (0..=n)
                .filter(|&tau| tau.max(sigma) <= n)
                .map(|tau| (tau, tau.max(sigma), &ids[tau]))
                .collect();
            row.push(sum_map(c.level(n), c.level(n), &parts));
        }
        tables.push(row);
    }
    Ok(homotopy_from_components(tables))
}

/// The mapping cone `Z = C(f)` with `g: Y → Z`.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub object: Arc<SimplicialModule>,
    pub map: SimplicialMorphism,
}

pub fn mapping_cone(f: &SimplicialMorphism, element_budget: usize) -> Result<MappingCone> {
    let name = format!("C({})", f.name);
    let object = Arc::new(cone_of(f, &name, element_budget)?);
    let map = base_inclusion(&f.target, &object, &format!("g_{}", f.name))?;
    Ok(MappingCone { object, map })
}

/// `ΣX = C(X → 0)`.
pub fn suspension(x: &Arc<SimplicialModule>, element_budget: usize) -> Result<Arc<SimplicialModule>> {
    let zero = Arc::new(SimplicialModule::zero(x.semiring().clone(), x.truncation()));
    let f = SimplicialMorphism::zero(x.clone(), zero)?;
    Ok(Arc::new(cone_of(&f, &format!("S({})", x.name()), element_budget)?))
}

/// `Σu: ΣX → ΣX'` for `u: X → X'`, with `sx`, `sx2` built by [`suspension`].
pub fn suspension_map(
    u: &SimplicialMorphism,
    sx: &Arc<SimplicialModule>,
    sx2: &Arc<SimplicialModule>,
) -> Result<SimplicialMorphism> {
    let z = Arc::new(SimplicialModule::zero(u.source.semiring().clone(), u.source.truncation()));
    let zero_id = SimplicialMorphism::identity(z);
    induced_cone_map(sx, sx2, u, &zero_id, &format!("S{}", u.name))
}

/// The collapse `C(id_X) → ΣX`.
pub fn cone_to_suspension(
    x: &Arc<SimplicialModule>,
    cx: &Arc<SimplicialModule>,
    sx: &Arc<SimplicialModule>,
) -> Result<SimplicialMorphism> {
    let z = Arc::new(SimplicialModule::zero(x.semiring().clone(), x.truncation()));
    let to_zero = SimplicialMorphism::zero(x.clone(), z)?;
    induced_cone_map(cx, sx, &SimplicialMorphism::identity(x.clone()), &to_zero, "collapse")
}

/// Whether every reliable homology degree of `x` vanishes.
pub fn is_acyclic(x: &SimplicialModule, strict_zero: bool) -> Result<bool> {
    let h = homology(x, strict_zero)?;
    Ok(h.degrees.iter().filter(|d| d.reliable).all(|d| d.is_zero()))
}

/// Fails unless the two simplicial objects have identical level sizes and
/// structure tables.
pub fn same_simplicial_tables(a: &SimplicialModule, b: &SimplicialModule) -> bool {
    a.truncation() == b.truncation()
        && (0..=a.truncation()).all(|n| a.level(n).same_tables(b.level(n)))
        && a.all_maps().iter().zip(b.all_maps().iter()).all(|(p, q)| p.3.table() == q.3.table())
}

pub(crate) fn require_square(
    f: &SimplicialMorphism,
    f2: &SimplicialMorphism,
    u: &SimplicialMorphism,
    v: &SimplicialMorphism,
) -> Result<()> {
    let lhs = f.then(v)?;
    let rhs = u.then(f2)?;
    if !lhs.tables_equal(&rhs) {
        return Err(Error::Precondition(format!(
            "the square {} ∘ {} = {} ∘ {} does not commute",
            v.name, f.name, f2.name, u.name
        )));
    }
    Ok(())
}
