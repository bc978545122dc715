use std::sync::Arc;

use super::multilinear::MultilinearMap;
use super::presentation::{Monomial, PresentedModule};
use crate::algebra::{require_same_semiring, TernaryGammaModule};
use crate::Result;

/// `M ⊗ N` together with its canonical multilinear map and presentation.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: Arc<TernaryGammaModule>,
    pub canonical: MultilinearMap,
    pub presentation: PresentedModule,
}

/// The tensor product: the free commutative monoid on symbols `m⊗n`
/// (`m, n` nonzero; symbols with a zero factor are zero) modulo additivity
/// in each slot and the balance `(t1)_α(m)_β t2 ⊗ n ~ m ⊗ (t1)_α(n)_β t2`,
/// acting through the first slot. Fails with
/// [`Error::SaturationUnbounded`](crate::Error::SaturationUnbounded) rather
/// than truncating.
pub fn tensor(
    m: &Arc<TernaryGammaModule>,
    n: &Arc<TernaryGammaModule>,
    element_budget: usize,
    step_budget: usize,
) -> Result<TensorProduct> {
    require_same_semiring(m, n)?;
    let (sm, sn) = (m.size(), n.size());
    let mut gen = vec![None; sm * sn];
    let mut names = Vec::new();
    for x in 0..sm {
        for y in 0..sn {
            if x != m.zero() && y != n.zero() {
                gen[x * sn + y] = Some(names.len());
                names.push(format!("{}*{}", m.element_name(x), n.element_name(y)));
            }
        }
    }
    let k = names.len();
    let mono = |x: usize, y: usize| -> Monomial {
        let mut w = vec![0; k];
        if let Some(i) = gen[x * sn + y] {
            w[i] = 1;
        }
        w
    };
    let sum = |a: Monomial, b: Monomial| -> Monomial { a.iter().zip(&b).map(|(p, q)| p + q).collect() };
    let scalars = m.semiring().scalar_count();
    let mut relations = Vec::new();
    for x in 0..sm {
        for y in 0..sn {
            for x2 in 0..sm {
                relations.push((mono(m.add(x, x2), y), sum(mono(x, y), mono(x2, y))));
            }
            for y2 in 0..sn {
                relations.push((mono(x, n.add(y, y2)), sum(mono(x, y), mono(x, y2))));
            }
            for s in 0..scalars {
                relations.push((mono(m.act_scalar(s, x), y), mono(x, n.act_scalar(s, y))));
            }
        }
    }
    relations.retain(|(a, b)| a != b);
    relations.sort();
    relations.dedup();
    let mut action = vec![Vec::with_capacity(k); scalars];
    for (s, row) in action.iter_mut().enumerate() {
        for x in 0..sm {
            for y in 0..sn {
                if gen[x * sn + y].is_some() {
                    row.push(mono(m.act_scalar(s, x), y));
                }
            }
        }
    }
    let mut presentation = PresentedModule::new(names, relations, action, element_budget);
    let name = format!("{}(x){}", m.name(), n.name());
    let module = presentation.resolve(&name, m.semiring().clone(), step_budget)?;
    let mut table = Vec::with_capacity(sm * sn);
    for x in 0..sm {
        for y in 0..sn {
            table.push(presentation.element_of(&mono(x, y)).expect("resolved"));
        }
    }
    let canonical = MultilinearMap {
        m: m.clone(),
        n: n.clone(),
        p: module.clone(),
        table,
    };
    Ok(TensorProduct {
        module,
        canonical,
        presentation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_module, module_isomorphism};
    use crate::corpus;

    #[test]
    fn tensor_with_zero_is_zero() {
        let z = Arc::new(corpus::zero_b1());
        let m = Arc::new(corpus::mb1());
        let t = tensor(&z, &m, 64, 10_000).unwrap();
        assert_eq!(t.module.size(), 1);
    }

    #[test]
    fn tensor_of_mb1_with_itself() {
        let m = Arc::new(corpus::mb1());
        let t = tensor(&m, &m, 64, 10_000).unwrap();
        assert_eq!(t.module.size(), 2);
        assert!(check_module(&t.module, true).unwrap().passed());
        assert!(t.canonical.is_multilinear());
        assert!(t.presentation.relations_respected());
    }

    #[test]
    fn tensor_is_symmetric_on_z3() {
        let a = Arc::new(corpus::mz3());
        let t1 = tensor(&a, &a, 64, 100_000).unwrap();
        assert!(t1.canonical.is_multilinear());
        assert!(check_module(&t1.module, true).unwrap().passed());
        let mods: Vec<_> = corpus::small_b1_modules().into_iter().map(Arc::new).collect();
        for x in &mods {
            for y in &mods {
                let xy = tensor(x, y, 64, 10_000).unwrap().module;
                let yx = tensor(y, x, 64, 10_000).unwrap().module;
                assert!(module_isomorphism(&xy, &yx, 1 << 16).unwrap().is_some());
            }
        }
    }
}
