use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use tgw_core::exactness::{
    coequalizer, congruence_closure, enumerate_congruences, image_factorization, is_regular_epi, kernel_pair,
    pullback, quotient, Congruence,
};
use tgw_core::{corpus, enumerate_morphisms, module_isomorphism, ModuleMorphism, TernaryGammaModule};

fn family() -> Vec<Arc<TernaryGammaModule>> {
    let mut v: Vec<_> = corpus::small_b1_modules().into_iter().map(Arc::new).collect();
    v.push(Arc::new(corpus::mb1_squared()));
    v
}

fn morphisms() -> Vec<ModuleMorphism> {
    let f = family();
    f.iter()
        .flat_map(|a| f.iter().map(move |b| (a.clone(), b.clone())))
        .flat_map(|(a, b)| enumerate_morphisms(&a, &b, 1 << 20).unwrap())
        .collect()
}

/// Naive fixpoint: the least equivalence containing `pairs` that is closed
/// under adding an element and under every scalar.
fn closure_oracle(m: &TernaryGammaModule, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let n = m.size();
    let mut r = vec![vec![false; n]; n];
    for (x, row) in r.iter_mut().enumerate() {
        row[x] = true;
    }
    for &(x, y) in pairs {
        r[x][y] = true;
    }
    let scalars = m.semiring().scalar_count();
    loop {
        let mut next = r.clone();
        for x in 0..n {
            for y in 0..n {
                if !r[x][y] {
                    continue;
                }
                next[y][x] = true;
                for z in 0..n {
                    if r[y][z] {
                        next[x][z] = true;
                    }
                    next[m.add(x, z)][m.add(y, z)] = true;
                }
                for s in 0..scalars {
                    next[m.act_scalar(s, x)][m.act_scalar(s, y)] = true;
                }
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

fn relation(c: &Congruence) -> Vec<Vec<bool>> {
    let n = c.module().size();
    (0..n).map(|x| (0..n).map(|y| c.related(x, y)).collect()).collect()
}

fn compatible(m: &TernaryGammaModule, labels: &[usize]) -> bool {
    let n = m.size();
    (0..n).all(|x| {
        (0..n).all(|y| {
            labels[x] != labels[y]
                || ((0..n).all(|z| labels[m.add(x, z)] == labels[m.add(y, z)])
                    && (0..m.semiring().scalar_count())
                        .all(|s| labels[m.act_scalar(s, x)] == labels[m.act_scalar(s, y)]))
        })
    })
}

/// Restricted-growth strings of length `n`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                let top = *p.iter().max().unwrap();
                (0..=top + 1).map(move |b| {
                    let mut q = p.clone();
                    q.push(b);
                    q
                })
            })
            .collect();
    }
    out
}

#[test]
fn congruence_enumeration_matches_partition_scan() {
    for m in family().into_iter().chain([Arc::new(corpus::mz3())]) {
        let got: BTreeSet<Vec<usize>> =
            enumerate_congruences(&m).unwrap().iter().map(|c| c.block_of().to_vec()).collect();
        let want: BTreeSet<Vec<usize>> = partitions(m.size()).into_iter().filter(|p| compatible(&m, p)).collect();
        let normalize = |s: BTreeSet<Vec<usize>>| -> BTreeSet<Vec<Vec<bool>>> {
            s.into_iter()
                .map(|l| (0..l.len()).map(|x| (0..l.len()).map(|y| l[x] == l[y]).collect()).collect())
                .collect()
        };
        assert_eq!(normalize(got), normalize(want), "{}", m.name());
    }
}

#[test]
fn pullbacks_have_the_matching_pairs() {
    let ms = morphisms();
    for f in &ms {
        for g in ms.iter().filter(|g| g.target().same_tables(f.target())) {
            let (p, _, _) = pullback(f, g, 1 << 16).unwrap();
            let count = (0..f.source().size())
                .flat_map(|a| (0..g.source().size()).map(move |b| (a, b)))
                .filter(|&(a, b)| f.apply(a) == g.apply(b))
                .count();
            assert_eq!(p.size(), count);
        }
    }
}

#[test]
fn coequalizer_of_the_kernel_pair_is_the_image() {
    for f in morphisms() {
        let (q, _) = quotient(&kernel_pair(&f)).unwrap();
        let image: BTreeSet<usize> = f.table().iter().copied().collect();
        assert_eq!(q.size(), image.len(), "{}", f.name());
        let factor = image_factorization(&f).unwrap();
        assert!(module_isomorphism(&q, &factor.middle, 1 << 20).unwrap().is_some(), "{}", f.name());
        let (regular, _) = is_regular_epi(&f).unwrap();
        assert_eq!(regular, f.is_surjective(), "{}", f.name());
    }
}

#[test]
fn coequalizer_of_equal_maps_is_the_identity() {
    for f in morphisms() {
        let (q, p) = coequalizer(&f, &f).unwrap();
        assert_eq!(q.size(), f.target().size());
        assert!(p.is_bijective());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_the_least_congruence(
        k in 0usize..3,
        raw in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..4),
    ) {
        let m = Arc::new(vec![corpus::mb1_squared(), corpus::mz3(), corpus::mb1()].swap_remove(k));
        let n = m.size();
        let pairs: Vec<(usize, usize)> = raw.iter().map(|(a, b)| (a.index(n), b.index(n))).collect();
        let c = congruence_closure(&m, &pairs).unwrap();
        prop_assert!(c.is_compatible());
        prop_assert_eq!(relation(&c), closure_oracle(&m, &pairs));
        let (q, p) = quotient(&c).unwrap();
        prop_assert_eq!(q.size(), c.block_count());
        for &(a, b) in &pairs {
            prop_assert_eq!(p.apply(a), p.apply(b));
        }
    }
}
