mod common;

use std::sync::Arc;

use proptest::prelude::*;
use tgw_core::simplicial::{
    check_simplicial, check_simplicial_morphism, homology, is_kan, is_weak_equivalence, product_simplicial,
    simplicial_violation, tensor_with_simplicial_set, FiniteSimplicialSet, SimplicialModule,
};
use tgw_core::{corpus, enumerate_morphisms, Status};

const TOP: usize = 3;

fn mz3() -> Arc<SimplicialModule> {
    corpus::constant(corpus::mz3(), TOP)
}

/// `MZ3 ⊗ K` has the homology of `K` with coefficients in Z3.
#[test]
fn tensoring_with_a_space_gives_its_homology() {
    let cases = [
        (FiniteSimplicialSet::point(TOP), [3, 1, 1]),
        (FiniteSimplicialSet::delta(1, TOP), [3, 1, 1]),
        (FiniteSimplicialSet::discrete(2, TOP), [9, 1, 1]),
        (FiniteSimplicialSet::circle(TOP), [3, 3, 1]),
    ];
    for (k, want) in cases {
        let x = tensor_with_simplicial_set(&mz3(), &k, 1 << 16).unwrap();
        assert!(check_simplicial(&x).passed(), "{}", x.name());
        let h = homology(&x, true).unwrap();
        for n in 0..TOP {
            assert_eq!(h.degrees[n].size(), want[n], "{} H_{n}", x.name());
            assert_eq!(common::coset_homology(&x, n).order(), want[n], "oracle {} H_{n}", x.name());
        }
    }
}

#[test]
fn constant_objects_are_kan_and_satisfy_the_identities() {
    for m in corpus::modules() {
        let x = corpus::constant(m, TOP);
        assert!(check_simplicial(&x).passed());
        assert!(is_kan(&x, 1 << 24).unwrap().holds, "{}", x.name());
    }
}

#[test]
fn products_of_constants_are_constant_products() {
    let x = corpus::constant(corpus::mb1(), TOP);
    let p = product_simplicial(&x, &x, 1 << 16).unwrap();
    assert!(check_simplicial(&p).passed());
    let h = homology(&p, true).unwrap();
    assert_eq!(h.degrees[0].size(), 4);
    assert!(h.degrees[1].is_zero());
}

#[test]
fn weak_equivalences_on_constants_are_isomorphisms() {
    for m in [corpus::mb1(), corpus::mz3(), corpus::mb1_squared()] {
        let m = Arc::new(m);
        for f in enumerate_morphisms(&m, &m, 1 << 20).unwrap() {
            let g = corpus::constant_map(&f, TOP);
            assert!(check_simplicial_morphism(&g).passed());
            let w = is_weak_equivalence(&g, true).unwrap();
            assert_eq!(w.holds, f.is_bijective(), "{} {}", m.name(), f.name());
        }
    }
}

/// The identities decided by plain loops, one verdict per law.
fn identity_oracle(x: &SimplicialModule) -> [(&'static str, bool); 3] {
    let d = |n: usize, i: usize, e: usize| x.face(n, i).apply(e);
    let s = |n: usize, i: usize, e: usize| x.degeneracy(n, i).apply(e);
    let top = x.truncation();
    let (mut ff, mut ss, mut fs) = (true, true, true);
    for n in 0..=top {
        for e in 0..x.level(n).size() {
            for j in 0..=n {
                for i in 0..j {
                    if n >= 2 {
                        ff &= d(n - 1, i, d(n, j, e)) == d(n - 1, j - 1, d(n, i, e));
                    }
                }
                for i in 0..=j {
                    if n + 2 <= top {
                        ss &= s(n + 1, i, s(n, j, e)) == s(n + 1, j + 1, s(n, i, e));
                    }
                }
                if n < top {
                    for i in 0..=n + 1 {
                        let lhs = d(n + 1, i, s(n, j, e));
                        let rhs = match i {
                            i if i < j => s(n - 1, j - 1, d(n, i, e)),
                            i if i == j || i == j + 1 => e,
                            _ => s(n - 1, j, d(n, i - 1, e)),
                        };
                        fs &= lhs == rhs;
                    }
                }
            }
        }
    }
    [("face_face", ff), ("degeneracy_degeneracy", ss), ("face_degeneracy", fs)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn broken_faces_are_caught_and_replay(
        n in 1usize..=TOP,
        i in any::<prop::sample::Index>(),
        e in any::<prop::sample::Index>(),
        v in any::<prop::sample::Index>(),
    ) {
        let base = tensor_with_simplicial_set(&mz3(), &FiniteSimplicialSet::circle(TOP), 1 << 16).unwrap();
        let i = i.index(n + 1);
        let mut table = base.face(n, i).table().to_vec();
        let at = e.index(table.len());
        table[at] = v.index(base.level(n - 1).size());
        let x = base.with_face(n, i, table).unwrap();
        let r = check_simplicial(&x);
        for c in r.failures() {
            prop_assert!(simplicial_violation(&x, &c.name, &c.witness.as_ref().unwrap().values), "{}", c.name);
        }
        for (law, holds) in identity_oracle(&x) {
            prop_assert_eq!(r.check(law).unwrap().status == Status::Pass, holds, "{}", law);
        }
    }
}
