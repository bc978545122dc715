use std::sync::Arc;

use rayon::prelude::*;

use super::cone::{
    induced_cone_map, mapping_cone, same_simplicial_tables, suspension, suspension_map,
    through_component,
};
use crate::config::WorkbenchConfig;
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::simplicial::{
    check_simplicial_morphism, find_simplicial_homotopy, homology, induced_map, Homology,
    HomotopySearch, SimplicialModule, SimplicialMorphism,
};
use crate::{Error, Result};

/// `X → Y → Z → W → ΣX` with its certificates.
#[derive(Clone, Debug)]
pub struct ThreeAngle {
    /// `[X, Y, Z, W, ΣX]`.
    pub objects: Vec<Arc<SimplicialModule>>,
    /// `[f, g, h, w]`.
    pub maps: Vec<SimplicialMorphism>,
    /// How many times the angle has been rotated from a built one.
    pub rotations: usize,
    pub certificates: AxiomReport,
}

impl ThreeAngle {
    pub fn certified(&self) -> bool {
        self.certificates.passed()
    }
}

/// Completes `f` to a 3-angle: `Z = C(f)`, `W = C(g)`, and `w` collapses the
/// copy of `Y` and its cone inside `W` onto `ΣX`.
pub fn build_3_angle(f: &SimplicialMorphism, config: &WorkbenchConfig) -> Result<ThreeAngle> {
    let x = f.source.clone();
    let y = f.target.clone();
    let zc = mapping_cone(f, config.element_budget)?;
    let g = zc.map.clone().renamed_to("g");
    let wc = mapping_cone(&g, config.element_budget)?;
    let h = wc.map.clone().renamed_to("h");
    let sx = suspension(&x, config.element_budget)?;
    let zero_y = Arc::new(SimplicialModule::zero(x.semiring().clone(), x.truncation()));
    let y_to_zero = SimplicialMorphism::zero(y.clone(), zero_y)?;
    let collapse_y = induced_cone_map(
        &zc.object,
        &sx,
        &SimplicialMorphism::identity(x.clone()),
        &y_to_zero,
        "collapse",
    )?;
    let w_tables = (0..=x.truncation())
        .map(|n| through_component(wc.object.level(n), 0, collapse_y.level(n)))
        .collect();
    let w = SimplicialMorphism::from_tables("w", wc.object.clone(), sx.clone(), w_tables)?;
    let objects = vec![x, y, zc.object.clone(), wc.object.clone(), sx];
    let maps = vec![f.clone(), g, h, w];
    let mut certificates = certify(&objects, &maps, config)?;
    certificates.artifact("w", "collapse of the base and its cone");
    Ok(ThreeAngle {
        objects,
        maps,
        rotations: 0,
        certificates,
    })
}

trait Renamed {
    fn renamed_to(self, name: &str) -> Self;
}

impl Renamed for SimplicialMorphism {
    fn renamed_to(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// `(Y, Z, W, ΣX, ΣY)` with maps `(g, h, w, −Σf)`. Without additive inverses
/// the sign is dropped and the report says so.
pub fn rotate(a: &ThreeAngle, config: &WorkbenchConfig) -> Result<ThreeAngle> {
    let [x, y, z, w_obj, sx] = [0, 1, 2, 3, 4].map(|i| a.objects[i].clone());
    let rebuilt = suspension(&x, config.element_budget)?;
    if !same_simplicial_tables(&rebuilt, &sx) {
        return Err(Error::Precondition(
            "the last object is not the suspension of the first".into(),
        ));
    }
    let sy = suspension(&y, config.element_budget)?;
    let sf = suspension_map(&a.maps[0], &sx, &sy)?;
    let group_complete = sy.levels().iter().all(|l| l.is_group_complete());
    let last = if group_complete {
        let tables = (0..=sy.truncation())
            .map(|n| {
                let l = sy.level(n);
                sf.level(n).table().iter().map(|&v| l.negate(v).expect("group-complete")).collect()
            })
            .collect();
        SimplicialMorphism::from_tables(format!("-{}", sf.name), sx.clone(), sy.clone(), tables)?
    } else {
        sf
    };
    let objects = vec![y, z, w_obj, sx, sy];
    let maps = vec![a.maps[1].clone(), a.maps[2].clone(), a.maps[3].clone(), last];
    let mut certificates = certify(&objects, &maps, config)?;
    certificates.artifact(
        "sign",
        if group_complete {
            "negated suspension"
        } else {
            "suspension without sign (no additive inverses)"
        },
    );
    certificates.artifact("input_certified", a.certified());
    Ok(ThreeAngle {
        objects,
        maps,
        rotations: a.rotations + 1,
        certificates,
    })
}

/// Simplicial maps, consecutive composites zero on reliable homology, and
/// the two triple composites null-homotopic (strong) or at least zero on
/// homology (weak).
pub fn certify(
    objects: &[Arc<SimplicialModule>],
    maps: &[SimplicialMorphism],
    config: &WorkbenchConfig,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(
        objects.iter().map(|o| o.name()).collect::<Vec<_>>().join(" -> "),
        config.strict_zero,
    );
    for (k, m) in maps.iter().enumerate() {
        let r = check_simplicial_morphism(m);
        report.push(Check::from_outcome(
            format!("map{}_simplicial", k + 1),
            Tier::Structural,
            r.failures().next().and_then(|c| c.witness.clone()),
        ));
    }
    if !report.passed() {
        return Ok(report);
    }
    let homologies: Vec<Homology> = objects
        .par_iter()
        .map(|o| homology(o, config.strict_zero))
        .collect::<Result<_>>()?;
    for k in 0..3 {
        let c = maps[k].then(&maps[k + 1])?;
        let hit = nonzero_on_homology(&c, &homologies[k], &homologies[k + 2])?;
        report.push(Check::from_outcome(
            format!("composite_{}_{}", k + 1, k + 2),
            Tier::Axiom,
            hit.map(Witness::unlabeled),
        ));
    }
    for k in 0..2 {
        let c = maps[k].then(&maps[k + 1])?.then(&maps[k + 2])?;
        let name = format!("triple_{}_{}", k + 1, k + 3);
        let zero = SimplicialMorphism::zero(c.source.clone(), c.target.clone())?;
        let search = find_simplicial_homotopy(&c, &zero, config.search_budget)?;
        match search {
            HomotopySearch::Found { .. } => {
                report.push(Check::pass(&name, Tier::Strong));
                report.artifact(format!("{name}_certificate"), "homotopy");
            }
            HomotopySearch::NotFound { exhaustive } => {
                let hit = nonzero_on_homology(&c, &homologies[k], &homologies[k + 3])?;
                report.push(Check::from_outcome(&name, Tier::Weak, hit.map(Witness::unlabeled)));
                report.artifact(
                    format!("{name}_certificate"),
                    if exhaustive {
                        "homology (no homotopy exists within the truncation)"
                    } else {
                        "homology (homotopy search budget exhausted)"
                    },
                );
            }
        }
    }
    Ok(report)
}

/// Whether `[n, c]` is a genuine violation of the certificate `law`
/// (`composite_k_l` or `triple_k_l`) of `a`: the class `c` of
/// `H_n` of the source is sent to a nonzero class.
pub fn certificate_violation(a: &ThreeAngle, law: &str, v: &[usize], config: &WorkbenchConfig) -> Result<bool> {
    let [n, c] = v else { return Ok(false) };
    let parts: Vec<&str> = law.split('_').collect();
    let (kind, k) = match parts.as_slice() {
        [kind @ ("composite" | "triple"), k, _] => match k.parse::<usize>() {
            Ok(k) if k >= 1 && k <= 3 => (*kind, k - 1),
            _ => return Ok(false),
        },
        _ => return Ok(false),
    };
    let len = if kind == "composite" { 2 } else { 3 };
    if k + len > a.maps.len() {
        return Ok(false);
    }
    let mut f = a.maps[k].clone();
    for m in &a.maps[k + 1..k + len] {
        f = f.then(m)?;
    }
    let hx = homology(&f.source, config.strict_zero)?;
    let hy = homology(&f.target, config.strict_zero)?;
    if *n >= hx.degrees.len() || !hx.degrees[*n].reliable || *c >= hx.degrees[*n].size() {
        return Ok(false);
    }
    let map = induced_map(&f, &hx, &hy, *n)?;
    let zero = hy.class_of(*n, f.target.level(*n).zero()).expect("zero is a cycle");
    Ok(map.apply(*c) != zero)
}

/// First `[degree, class]` of a reliable degree where `f` is not zero on
/// homology.
pub(crate) fn nonzero_on_homology(
    f: &SimplicialMorphism,
    hx: &Homology,
    hy: &Homology,
) -> Result<Option<Vec<usize>>> {
    for n in 0..hx.degrees.len() {
        if !hx.degrees[n].reliable {
            continue;
        }
        let map = induced_map(f, hx, hy, n)?;
        let zero = hy.class_of(n, f.target.level(n).zero()).expect("zero is a cycle");
        if let Some(c) = map.table().iter().position(|&v| v != zero) {
            return Ok(Some(vec![n, c]));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn rotation_counts_and_shapes() {
        let cfg = WorkbenchConfig::default();
        let a = build_3_angle(&corpus::b1_angle_base(3), &cfg).unwrap();
        assert_eq!(a.objects.len(), 5);
        assert_eq!(a.maps.len(), 4);
        let r = rotate(&a, &cfg).unwrap();
        assert_eq!(r.rotations, 1);
        assert!(Arc::ptr_eq(&r.objects[0], &a.objects[1]) || same_levels(&r.objects[0], &a.objects[1]));
    }

    fn same_levels(a: &SimplicialModule, b: &SimplicialModule) -> bool {
        a.levels().iter().zip(b.levels()).all(|(x, y)| x.size() == y.size())
    }

    #[test]
    fn certificate_witnesses_replay() {
        let cfg = WorkbenchConfig::default();
        let a = build_3_angle(&corpus::z3_angle_base(3), &cfg).unwrap();
        let r = rotate(&a, &cfg).unwrap();
        let bad: Vec<_> = r.certificates.failures().collect();
        assert!(!bad.is_empty());
        for c in bad {
            assert!(certificate_violation(&r, &c.name, &c.witness.as_ref().unwrap().values, &cfg).unwrap());
        }
        assert!(!certificate_violation(&a, "composite_1_2", &[0, 0], &cfg).unwrap());
    }
}
