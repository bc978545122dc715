//! Products, sums and submodules.

use std::sync::Arc;

use super::module::{same_semiring, TernaryGammaModule};
use super::morphism::{ModuleMorphism, Span};
use crate::{Error, Result};

/// The product `m × n`; in this semiadditive setting it is also the
/// coproduct. Element `(a, b)` is encoded as `a * |n| + b`.
pub fn product_module(
    m: &Arc<TernaryGammaModule>,
    n: &Arc<TernaryGammaModule>,
    element_budget: usize,
) -> Result<TernaryGammaModule> {
    TernaryGammaModule::direct_sum(
        format!("{}x{}", m.name(), n.name()),
        vec![m.clone(), n.clone()],
        element_budget,
    )
}

/// Projection of a direct sum onto factor `i`.
pub fn projection(sum: &Arc<TernaryGammaModule>, i: usize) -> Result<ModuleMorphism> {
    let factors = sum
        .sum_factors()
        .ok_or_else(|| Error::Precondition(format!("{} is not a direct sum", sum.name())))?;
    let target = factors
        .get(i)
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("{} has no factor {i}", sum.name())))?;
    ModuleMorphism::from_fn(format!("p{i}"), sum.clone(), target, |x| sum.components(x)[i])
}

/// Inclusion of factor `i` into a direct sum.
pub fn injection(sum: &Arc<TernaryGammaModule>, i: usize) -> Result<ModuleMorphism> {
    let factors = sum
        .sum_factors()
        .ok_or_else(|| Error::Precondition(format!("{} is not a direct sum", sum.name())))?;
    let source = factors
        .get(i)
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("{} has no factor {i}", sum.name())))?;
    let mut parts: Vec<usize> = factors.iter().map(|f| f.zero()).collect();
    ModuleMorphism::from_fn(format!("i{i}"), source, sum.clone(), move |x| {
        parts[i] = x;
        sum.encode(&parts)
    })
}

/// The pairing `⟨f, g⟩: A → B × C` into a direct sum of the targets.
pub fn pairing(
    f: &ModuleMorphism,
    g: &ModuleMorphism,
    product: &Arc<TernaryGammaModule>,
) -> Result<ModuleMorphism> {
    if f.source().size() != g.source().size() {
        return Err(Error::Precondition("pairing needs a common source".into()));
    }
    let factors = product.sum_factors().unwrap_or(&[]);
    if factors.len() != 2
        || factors[0].size() != f.target().size()
        || factors[1].size() != g.target().size()
    {
        return Err(Error::Precondition(format!(
            "{} is not the product of the two targets",
            product.name()
        )));
    }
    ModuleMorphism::from_fn(
        format!("<{},{}>", f.name(), g.name()),
        f.source().clone(),
        product.clone(),
        |x| product.encode(&[f.apply(x), g.apply(x)]),
    )
}

/// The subset `members` as a submodule, after checking closure under zero,
/// addition and the action.
pub fn submodule(
    name: impl Into<String>,
    parent: &Arc<TernaryGammaModule>,
    members: &[usize],
) -> Result<TernaryGammaModule> {
    let name = name.into();
    let mut inside = vec![false; parent.size()];
    for &x in members {
        if x >= parent.size() {
            return Err(Error::malformed(
                format!("submodule {name}"),
                format!("element {x} out of range"),
            ));
        }
        inside[x] = true;
    }
    let closed = inside[parent.zero()]
        && members.iter().all(|&x| {
            members.iter().all(|&y| inside[parent.add(x, y)])
                && (0..parent.semiring().scalar_count()).all(|s| inside[parent.act_scalar(s, x)])
        });
    if !closed {
        return Err(Error::Precondition(format!(
            "subset {name} of {} is not a submodule",
            parent.name()
        )));
    }
    Ok(TernaryGammaModule::sub_unchecked(name, parent.clone(), members.to_vec()))
}

/// Inclusion of a submodule built by [`submodule`] or
/// [`submodule_generated`].
pub fn inclusion(sub: &Arc<TernaryGammaModule>) -> Result<ModuleMorphism> {
    let (parent, members) = sub
        .sub_members()
        .ok_or_else(|| Error::Precondition(format!("{} is not a submodule", sub.name())))?;
    ModuleMorphism::new(
        format!("incl_{}", sub.name()),
        sub.clone(),
        parent.clone(),
        members.to_vec(),
    )
}

/// Least submodule containing `seed`: closure under zero, addition and the
/// action in the module slot.
pub fn submodule_generated(
    m: &Arc<TernaryGammaModule>,
    seed: &[usize],
) -> Result<(Arc<TernaryGammaModule>, ModuleMorphism)> {
    if let Some(&x) = seed.iter().find(|&&x| x >= m.size()) {
        return Err(Error::malformed(
            format!("seed for {}", m.name()),
            format!("element {x} out of range"),
        ));
    }
    let span = Span::new(m, Some(seed));
    let sub = Arc::new(TernaryGammaModule::sub_unchecked(
        format!("<{}>", m.name()),
        m.clone(),
        span.members(),
    ));
    let incl = inclusion(&sub)?;
    Ok((sub, incl))
}

/// Whether two modules are over the same semiring; errors otherwise.
pub(crate) fn require_same_semiring(a: &TernaryGammaModule, b: &TernaryGammaModule) -> Result<()> {
    if same_semiring(a.semiring(), b.semiring()) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} and {} are over different semirings",
            a.name(),
            b.name()
        )))
    }
}
