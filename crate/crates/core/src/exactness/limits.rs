use std::sync::Arc;

use serde::Serialize;

use super::congruence::{kernel_pair, quotient};
use crate::algebra::{
    inclusion, product_module, projection, submodule, ModuleMorphism, TernaryGammaModule,
};
use crate::{Error, Result};

/// Pullback of `f: A → C` and `g: B → C`: the pairs `(a, b)` with
/// `f a = g b`, with its two projections.
pub fn pullback(
    f: &ModuleMorphism,
    g: &ModuleMorphism,
    element_budget: usize,
) -> Result<(Arc<TernaryGammaModule>, ModuleMorphism, ModuleMorphism)> {
    if f.target().size() != g.target().size() {
        return Err(Error::Precondition(format!(
            "{} and {} have different targets",
            f.name(),
            g.name()
        )));
    }
    let prod = Arc::new(product_module(f.source(), g.source(), element_budget)?);
    let members: Vec<usize> = (0..prod.size())
        .filter(|&x| {
            let c = prod.components(x);
            f.apply(c[0]) == g.apply(c[1])
        })
        .collect();
    let p = Arc::new(submodule(
        format!("{}x_{}", f.source().name(), g.source().name()),
        &prod,
        &members,
    )?);
    let p0 = projection(&prod, 0)?;
    let p1 = projection(&prod, 1)?;
    let left = ModuleMorphism::from_fn("pb0", p.clone(), f.source().clone(), |i| {
        p0.apply(members[i])
    })?;
    let right = ModuleMorphism::from_fn("pb1", p.clone(), g.source().clone(), |i| {
        p1.apply(members[i])
    })?;
    Ok((p, left, right))
}

/// Why a morphism is or is not a regular epimorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularEpiCertificate {
    pub surjective: bool,
    /// The comparison `source / kernel_pair(f) → target` is a bijection.
    pub comparison_bijective: bool,
}

/// `f` is regular iff it is the coequalizer of its kernel pair: it is onto
/// and the induced map from the quotient by its fibers is a bijection.
pub fn is_regular_epi(f: &ModuleMorphism) -> Result<(bool, RegularEpiCertificate)> {
    let surjective = f.is_surjective();
    let (q, _) = quotient(&kernel_pair(f))?;
    let comparison = comparison_map(f, &q)?;
    let comparison_bijective = comparison.is_bijective();
    Ok((
        surjective && comparison_bijective,
        RegularEpiCertificate {
            surjective,
            comparison_bijective,
        },
    ))
}

/// The map `source / kernel_pair(f) → target` induced by `f`.
fn comparison_map(f: &ModuleMorphism, q: &Arc<TernaryGammaModule>) -> Result<ModuleMorphism> {
    let (_, block_of) = q.quotient_blocks().expect("quotient");
    let mut reps = vec![usize::MAX; q.size()];
    for (x, &b) in block_of.iter().enumerate() {
        if reps[b] == usize::MAX {
            reps[b] = x;
        }
    }
    ModuleMorphism::from_fn("comparison", q.clone(), f.target().clone(), |b| {
        f.apply(reps[b])
    })
}

/// Regular-epi/mono factorization `f = mono ∘ epi` through the quotient of
/// the source by the fibers of `f`.
#[derive(Clone, Debug)]
pub struct ShortExactData {
    pub epi: ModuleMorphism,
    pub mono: ModuleMorphism,
    pub middle: Arc<TernaryGammaModule>,
}

pub fn image_factorization(f: &ModuleMorphism) -> Result<ShortExactData> {
    let (middle, epi) = quotient(&kernel_pair(f))?;
    let mono = comparison_map(f, &middle)?.renamed(format!("m_{}", f.name()));
    let composite = epi.then(&mono)?;
    if composite.table() != f.table() {
        return Err(Error::Inconsistent(format!(
            "factorization of {} does not recompose",
            f.name()
        )));
    }
    Ok(ShortExactData { epi, mono, middle })
}

/// The equalizer of two parallel morphisms as a submodule of their source,
/// with its inclusion.
pub fn equalizer(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<(Arc<TernaryGammaModule>, ModuleMorphism)> {
    if f.source().size() != g.source().size() || f.target().size() != g.target().size() {
        return Err(Error::Precondition(format!("{} and {} are not parallel", f.name(), g.name())));
    }
    let members: Vec<usize> = (0..f.source().size()).filter(|&x| f.apply(x) == g.apply(x)).collect();
    let eq = Arc::new(submodule(format!("Eq({},{})", f.name(), g.name()), f.source(), &members)?);
    let incl = inclusion(&eq)?;
    Ok((eq, incl))
}

/// Exactness of `A →f B →g C` at `B`: the image of `f` equals the
/// preimage of zero under `g`. Returns the first element of `B` where the
/// two sets differ.
pub fn exactness_witness(f: &ModuleMorphism, g: &ModuleMorphism) -> Option<usize> {
    let image = f.image();
    let mut in_image = vec![false; f.target().size()];
    for y in image {
        in_image[y] = true;
    }
    let z = g.target().zero();
    (0..g.source().size()).find(|&y| in_image[y] != (g.apply(y) == z))
}

pub fn is_exact_at(f: &ModuleMorphism, g: &ModuleMorphism) -> bool {
    exactness_witness(f, g).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_morphism, enumerate_morphisms, inclusion, submodule_generated};
    use crate::corpus;
    use crate::exactness::congruence_closure;

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let m = Arc::new(corpus::mb1());
        let id = ModuleMorphism::identity(m.clone());
        let (p, a, b) = pullback(&id, &id, 64).unwrap();
        assert_eq!(p.size(), 2);
        assert!(a.is_bijective() && b.is_bijective());
        assert!(check_morphism(&a).passed() && check_morphism(&b).passed());
    }

    #[test]
    fn pullback_along_identity_is_graph() {
        let m = Arc::new(corpus::mb1_squared());
        for f in enumerate_morphisms(&m, &m, 1 << 16).unwrap() {
            let id = ModuleMorphism::identity(m.clone());
            let (p, left, _) = pullback(&f, &id, 64).unwrap();
            assert_eq!(p.size(), m.size());
            assert!(left.is_bijective());
        }
    }

    #[test]
    fn regular_epis() {
        let m = Arc::new(corpus::mb1());
        assert!(is_regular_epi(&ModuleMorphism::identity(m.clone())).unwrap().0);
        let z = Arc::new(corpus::zero_b1());
        let incl = ModuleMorphism::zero(z, m).unwrap();
        assert!(!is_regular_epi(&incl).unwrap().0);
        let p = Arc::new(corpus::mb1_squared());
        let c = congruence_closure(&p, &[(1, 0)]).unwrap();
        let (_, proj) = quotient(&c).unwrap();
        assert!(is_regular_epi(&proj).unwrap().0);
    }

    #[test]
    fn factorizations_recompose() {
        let m = Arc::new(corpus::mb1_squared());
        for f in enumerate_morphisms(&m, &m, 1 << 16).unwrap() {
            let d = image_factorization(&f).unwrap();
            assert_eq!(d.epi.then(&d.mono).unwrap().table(), f.table());
            assert!(d.mono.is_injective());
            assert!(d.epi.is_surjective());
        }
        let mb1 = Arc::new(corpus::mb1());
        let d = image_factorization(&ModuleMorphism::zero(mb1.clone(), mb1).unwrap()).unwrap();
        assert_eq!(d.middle.size(), 1);
    }

    #[test]
    fn pullback_of_projection_along_inclusion_is_onto() {
        let p = Arc::new(corpus::mb1_squared());
        let c = congruence_closure(&p, &[(1, 0)]).unwrap();
        let (_, proj) = quotient(&c).unwrap();
        let (s, _) = submodule_generated(proj.target(), &[1]).unwrap();
        let incl = inclusion(&s).unwrap();
        let (_, _, pulled) = pullback(&proj, &incl, 64).unwrap();
        assert!(pulled.is_surjective());
    }

    #[test]
    fn exactness_of_zero_sequence() {
        let m = Arc::new(corpus::mb1());
        let z = Arc::new(corpus::zero_b1());
        let into = ModuleMorphism::zero(z.clone(), m.clone()).unwrap();
        let id = ModuleMorphism::identity(m.clone());
        assert!(is_exact_at(&into, &id));
        let out = ModuleMorphism::zero(m.clone(), z).unwrap();
        assert!(is_exact_at(&id, &out));
        assert!(!is_exact_at(&into, &out));
    }
}
