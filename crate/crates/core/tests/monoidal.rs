use std::sync::Arc;

use proptest::prelude::*;
use tgw_core::monoidal::{curry_check, curry_violation, internal_hom, tensor};
use tgw_core::{check_module, corpus, module_isomorphism, TernaryGammaModule};

fn family() -> Vec<Arc<TernaryGammaModule>> {
    let mut v: Vec<_> = corpus::small_b1_modules().into_iter().map(Arc::new).collect();
    v.push(Arc::new(corpus::mb1_squared()));
    v
}

#[test]
fn tensor_is_symmetric_up_to_isomorphism() {
    let f = family();
    for (i, a) in f.iter().enumerate() {
        for b in &f[i + 1..] {
            let ab = tensor(a, b, 1 << 12, 1 << 24).unwrap();
            let ba = tensor(b, a, 1 << 12, 1 << 24).unwrap();
            assert!(ab.canonical.is_multilinear());
            let iso = module_isomorphism(&ab.module, &ba.module, 1 << 24).unwrap();
            assert!(iso.is_some(), "{} (x) {}", a.name(), b.name());
        }
    }
}

#[test]
fn tensor_with_zero_is_zero() {
    let zero = Arc::new(corpus::zero_b1());
    for m in family() {
        assert_eq!(tensor(&m, &zero, 1 << 12, 1 << 24).unwrap().module.size(), 1);
        assert_eq!(tensor(&zero, &m, 1 << 12, 1 << 24).unwrap().module.size(), 1);
    }
}

#[test]
fn internal_homs_are_modules() {
    let f = family();
    for a in &f {
        for b in &f {
            let h = internal_hom(a, b, true, 1 << 24).unwrap();
            if let Some(m) = &h.module {
                assert!(check_module(m, true).unwrap().passed(), "Hom({}, {})", a.name(), b.name());
                assert_eq!(m.size(), h.morphisms.len());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn currying_is_a_bijection(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let f = family();
        let (m, n, p) = (&f[i % f.len()], &f[j % f.len()], &f[k % f.len()]);
        let t = tensor(m, n, 1 << 12, 1 << 24).unwrap();
        let r = curry_check(&t, p, 1 << 24).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        // a made-up witness must not replay
        prop_assert!(!curry_violation(&t, p, "injective", &[0, 0], 1 << 24));
    }
}
