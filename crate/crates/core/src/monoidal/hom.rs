use std::sync::Arc;

use super::multilinear::{enumerate_multilinear, multilinear_violation};
use super::tensor::TensorProduct;
use crate::algebra::{
    check_module, enumerate_morphism_tables, is_linear_table, FiniteCommutativeMonoid,
    ModuleMorphism, TernaryGammaModule,
};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::{Error, Result};

/// `Hom(M, N)` with pointwise addition and pointwise action
/// `((t1)_α φ _β t2)(x) = (t1)_α(φ x)_β t2`.
#[derive(Clone, Debug)]
pub struct InternalHom {
    /// `None` when the pointwise operations leave the morphism set.
    pub module: Option<Arc<TernaryGammaModule>>,
    pub morphisms: Vec<Vec<usize>>,
    pub report: AxiomReport,
}

pub fn internal_hom(
    m: &Arc<TernaryGammaModule>,
    n: &Arc<TernaryGammaModule>,
    strict: bool,
    budget: u64,
) -> Result<InternalHom> {
    let homs = enumerate_morphism_tables(m, n, budget)?;
    let index: std::collections::HashMap<&[usize], usize> =
        homs.iter().enumerate().map(|(i, h)| (h.as_slice(), i)).collect();
    let name = format!("Hom({},{})", m.name(), n.name());
    let mut report = AxiomReport::new(&name, strict);
    let k = homs.len();
    let pointwise_add = |a: usize, b: usize| -> Vec<usize> {
        (0..m.size()).map(|x| n.add(homs[a][x], homs[b][x])).collect()
    };
    let mut add = Vec::with_capacity(k * k);
    let mut add_escape = None;
    for a in 0..k {
        for b in 0..k {
            match index.get(pointwise_add(a, b).as_slice()) {
                Some(&c) => add.push(c),
                None => {
                    add_escape.get_or_insert(vec![a, b]);
                    add.push(0);
                }
            }
        }
    }
    report.push(Check::from_outcome(
        "addition_closed",
        Tier::Structural,
        add_escape.map(Witness::unlabeled),
    ));
    let s = m.semiring();
    let scalars = s.scalar_count();
    let mut acted = vec![vec![0; k]; scalars];
    let mut act_escape = None;
    for (sc, row) in acted.iter_mut().enumerate() {
        for (phi, slot) in row.iter_mut().enumerate() {
            let t: Vec<usize> = (0..m.size()).map(|x| n.act_scalar(sc, homs[phi][x])).collect();
            match index.get(t.as_slice()) {
                Some(&c) => *slot = c,
                None => {
                    act_escape.get_or_insert(vec![sc, phi]);
                }
            }
        }
    }
    report.push(Check::from_outcome(
        "action_closed",
        Tier::Structural,
        act_escape.map(Witness::unlabeled),
    ));
    report.artifact("morphisms", k);
    if !report.passed() {
        return Ok(InternalHom {
            module: None,
            morphisms: homs,
            report,
        });
    }
    let zero = index[vec![n.zero(); m.size()].as_slice()];
    let names: Vec<String> = homs
        .iter()
        .map(|h| {
            let parts: Vec<String> = h.iter().map(|&y| n.element_name(y)).collect();
            format!("[{}]", parts.join(" "))
        })
        .collect();
    let carrier = FiniteCommutativeMonoid::new(k, zero, add, Some(names))?;
    let g = s.gamma_size();
    let t = s.size();
    let module = TernaryGammaModule::from_fn(&name, s.clone(), carrier, |t1, al, phi, be, t2| {
        acted[((t1 * g + al) * g + be) * t + t2][phi]
    })?;
    let checked = check_module(&module, strict)?;
    report.absorb("module", checked);
    Ok(InternalHom {
        module: Some(Arc::new(module)),
        morphisms: homs,
        report,
    })
}

/// The triadic bracket of three maps into the regular module:
/// `[φ, α, ψ, β, ω](x) = [φ x, α, ψ x, β, ω x]`.
pub fn hom_bracket(
    phi: &ModuleMorphism,
    al: usize,
    psi: &ModuleMorphism,
    be: usize,
    omega: &ModuleMorphism,
) -> Result<Vec<usize>> {
    let n = phi.target();
    let s = n.semiring();
    let regular = TernaryGammaModule::regular("reg", s.clone());
    if !n.same_tables(&regular) {
        return Err(Error::Precondition(format!(
            "the bracket needs maps into the regular module; {} is not",
            n.name()
        )));
    }
    if psi.table().len() != phi.table().len() || omega.table().len() != phi.table().len() {
        return Err(Error::Precondition("bracket needs a common source".into()));
    }
    Ok((0..phi.source().size())
        .map(|x| s.mul(phi.apply(x), al, psi.apply(x), be, omega.apply(x)))
        .collect())
}

/// Checks that the bracket of every triple of morphisms `M → T` (regular
/// target) and every pair of parameters is again a morphism.
pub fn check_bracket_closure(
    m: &Arc<TernaryGammaModule>,
    budget: u64,
) -> Result<AxiomReport> {
    let s = m.semiring();
    let target = Arc::new(TernaryGammaModule::regular(s.name().to_string(), s.clone()));
    let homs = enumerate_morphism_tables(m, &target, budget)?;
    let mut report = AxiomReport::new(format!("bracket({})", m.name()), true);
    let g = s.gamma_size();
    let mut witness = None;
    'outer: for a in 0..homs.len() {
        for b in 0..homs.len() {
            for c in 0..homs.len() {
                for al in 0..g {
                    for be in 0..g {
                        let t: Vec<usize> = (0..m.size())
                            .map(|x| s.mul(homs[a][x], al, homs[b][x], be, homs[c][x]))
                            .collect();
                        if !is_linear_table(m, &target, &t) {
                            witness = Some(vec![a, al, b, be, c]);
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    report.push(Check::from_outcome(
        "bracket_closed",
        Tier::Axiom,
        witness.map(Witness::unlabeled),
    ));
    report.artifact("morphisms", homs.len());
    Ok(report)
}

/// Certifies that composing with the canonical map is a bijection
/// `Hom(M ⊗ N, P) → Multilinear(M, N; P)`, computing both sides by
/// separate enumerations.
pub fn curry_check(
    t: &TensorProduct,
    p: &Arc<TernaryGammaModule>,
    budget: u64,
) -> Result<AxiomReport> {
    let (m, n) = (&t.canonical.m, &t.canonical.n);
    let homs = enumerate_morphism_tables(&t.module, p, budget)?;
    let multis = enumerate_multilinear(m, n, p, budget)?;
    let mut report = AxiomReport::new(
        format!("curry({},{};{})", m.name(), n.name(), p.name()),
        true,
    );
    let composites: Vec<Vec<usize>> = homs
        .iter()
        .map(|h| t.canonical.table.iter().map(|&c| h[c]).collect())
        .collect();
    let bad = composites
        .iter()
        .position(|c| multilinear_violation(m, n, p, c).is_some());
    report.push(Check::from_outcome(
        "composites_multilinear",
        Tier::Axiom,
        bad.map(|i| Witness::unlabeled(vec![i])),
    ));
    let mut dup = None;
    for i in 0..composites.len() {
        if let Some(j) = (i + 1..composites.len()).find(|&j| composites[i] == composites[j]) {
            dup = Some(vec![i, j]);
            break;
        }
    }
    report.push(Check::from_outcome(
        "injective",
        Tier::Axiom,
        dup.map(Witness::unlabeled),
    ));
    let missing = multis
        .iter()
        .position(|f| !composites.iter().any(|c| *c == f.table));
    report.push(Check::from_outcome(
        "surjective",
        Tier::Axiom,
        missing.map(|i| Witness::unlabeled(vec![i])),
    ));
    report.artifact("hom_count", homs.len());
    report.artifact("multilinear_count", multis.len());
    if !report.passed() {
        report.artifact("suspect", "tensor relation set");
    }
    Ok(report)
}

/// Replays a curry-check witness.
pub fn curry_violation(t: &TensorProduct, p: &Arc<TernaryGammaModule>, law: &str, w: &[usize], budget: u64) -> bool {
    let Ok(homs) = enumerate_morphism_tables(&t.module, p, budget) else {
        return false;
    };
    let composite = |i: usize| -> Vec<usize> { t.canonical.table.iter().map(|&c| homs[i][c]).collect() };
    let (m, n) = (&t.canonical.m, &t.canonical.n);
    match (law, w) {
        ("composites_multilinear", &[i]) => multilinear_violation(m, n, p, &composite(i)).is_some(),
        ("injective", &[i, j]) => i != j && composite(i) == composite(j),
        ("surjective", &[i]) => enumerate_multilinear(m, n, p, budget)
            .map(|ms| (0..homs.len()).all(|h| composite(h) != ms[i].table))
            .unwrap_or(false),
        _ => false,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::monoidal::tensor;

    #[test]
    fn hom_from_zero_is_a_point() {
        let z = Arc::new(corpus::zero_b1());
        let m = Arc::new(corpus::mb1());
        let h = internal_hom(&z, &m, true, 1 << 16).unwrap();
        assert_eq!(h.module.unwrap().size(), 1);
    }

    #[test]
    fn hom_mb1_mb1_is_a_module() {
        let m = Arc::new(corpus::mb1());
        let h = internal_hom(&m, &m, true, 1 << 16).unwrap();
        assert!(h.report.passed(), "{:?}", h.report);
        assert_eq!(h.module.unwrap().size(), h.morphisms.len());
    }

    #[test]
    fn bracket_of_identities() {
        let m = Arc::new(corpus::mb1());
        let id = ModuleMorphism::identity(m.clone());
        let b = hom_bracket(&id, 0, &id, 0, &id).unwrap();
        assert_eq!(b[1], m.semiring().mul(1, 0, 1, 0, 1));
        assert!(check_bracket_closure(&m, 1 << 16).unwrap().passed());
    }

    #[test]
    fn curry_on_mb1() {
        let m = Arc::new(corpus::mb1());
        let t = tensor(&m, &m, 64, 10_000).unwrap();
        let r = curry_check(&t, &m, 1 << 16).unwrap();
        assert!(r.passed());
        assert_eq!(r.artifacts["hom_count"], r.artifacts["multilinear_count"]);
    }
}
