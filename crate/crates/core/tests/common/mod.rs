//! Brute-force oracles shared by the integration tests. They recompute
//! things the library computes, by a different route.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use tgw_core::algebra::TernaryGammaModule;
use tgw_core::exactness::congruence_closure;
use tgw_core::simplicial::{tensor_with_simplicial_set, FiniteSimplicialSet, SimplicialModule, SimplicialMorphism};

/// Homology of a simplicial abelian group read as cosets `z + B` of
/// normalized cycles modulo boundaries.
#[derive(Clone, Debug)]
pub struct CosetHomology {
    pub cycles: Vec<usize>,
    pub boundaries: BTreeSet<usize>,
    /// Each class as its sorted coset; the class containing zero comes first.
    pub classes: Vec<Vec<usize>>,
}

impl CosetHomology {
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, level: &TernaryGammaModule, z: usize) -> usize {
        let coset = coset(level, z, &self.boundaries);
        self.classes.iter().position(|c| *c == coset).expect("not a cycle")
    }
}

fn coset(level: &TernaryGammaModule, z: usize, b: &BTreeSet<usize>) -> Vec<usize> {
    let s: BTreeSet<usize> = b.iter().map(|&b| level.add(z, b)).collect();
    s.into_iter().collect()
}

/// Elements of level `n` killed by every face except `d_0`.
pub fn normalized(x: &SimplicialModule, n: usize) -> Vec<usize> {
    (0..x.level(n).size())
        .filter(|&e| (1..=n).all(|i| x.face(n, i).apply(e) == x.level(n - 1).zero()))
        .collect()
}

pub fn coset_homology(x: &SimplicialModule, n: usize) -> CosetHomology {
    let level = x.level(n);
    let cycles: Vec<usize> = normalized(x, n)
        .into_iter()
        .filter(|&e| n == 0 || x.face(n, 0).apply(e) == x.level(n - 1).zero())
        .collect();
    let boundaries: BTreeSet<usize> = if n < x.truncation() {
        normalized(x, n + 1).into_iter().map(|c| x.face(n + 1, 0).apply(c)).collect()
    } else {
        [level.zero()].into()
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &z in std::iter::once(&level.zero()).chain(&cycles) {
        let c = coset(level, z, &boundaries);
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    CosetHomology {
        cycles,
        boundaries,
        classes,
    }
}

/// The induced map on coset classes as a table.
pub fn induced(f: &SimplicialMorphism, hx: &CosetHomology, hy: &CosetHomology, n: usize) -> Vec<usize> {
    hx.classes
        .iter()
        .map(|c| hy.class_of(f.target.level(n), f.level(n).apply(c[0])))
        .collect()
}

/// Whether `a` then `b` is exact in the middle: the image of `a` is the set
/// of classes `b` sends to the zero class.
pub fn exact(a: &[usize], b: &[usize], middle: usize) -> bool {
    let image: BTreeSet<usize> = a.iter().copied().collect();
    let kernel: BTreeSet<usize> = (0..middle).filter(|&c| b[c] == 0).collect();
    image == kernel
}

/// Connecting map `H_n(ΣX) → H_{n-1}(X)` of the cone sequence
/// `X → C(X) → ΣX`: lift a cycle to a normalized chain of the cone and take
/// its boundary in the base.
pub fn cone_connecting_map(
    cx: &SimplicialModule,
    collapse: &SimplicialMorphism,
    hs: &CosetHomology,
    hx: &CosetHomology,
    x: &SimplicialModule,
    n: usize,
) -> Option<Vec<usize>> {
    let chains = normalized(cx, n);
    hs.classes
        .iter()
        .map(|class| {
            let lift = chains.iter().find(|&&c| collapse.level(n).apply(c) == class[0])?;
            let b = cx.face(n, 0).apply(*lift);
            let parts = cx.level(n - 1).components(b);
            let rest_zero = parts[1..].iter().all(|&p| p == x.level(n - 1).zero());
            rest_zero.then(|| hx.class_of(x.level(n - 1), parts[0]))
        })
        .collect()
}

/// `C(f)` rebuilt as an honest pushout: `Y ⊕ (X ⊗ Δ[1])` modulo the
/// congruence generated by killing the 0-end copy and gluing the 1-end copy
/// along `f`. Returns, per level, the quotient labels and the map from the
/// library's reduced cone into the pushout classes.
pub struct PushoutCone {
    pub tensor: SimplicialModule,
    pub sums: Vec<Arc<TernaryGammaModule>>,
    pub labels: Vec<Vec<usize>>,
    pub reduced_to_pushout: Vec<Vec<usize>>,
    /// An element of `Y ⊕ (X ⊗ Δ[1])` representing each reduced element.
    pub reduced_repr: Vec<Vec<usize>>,
}

pub fn pushout_cone(f: &SimplicialMorphism, reduced: &SimplicialModule) -> PushoutCone {
    let (x, y) = (&f.source, &f.target);
    let top = x.truncation();
    let interval = FiniteSimplicialSet::delta(1, top);
    let tensor = tensor_with_simplicial_set(x, &interval, 1 << 20).expect("tensor");
    let mut sums = Vec::new();
    let mut labels = Vec::new();
    let mut maps = Vec::new();
    let mut reprs = Vec::new();
    for n in 0..=top {
        let t = tensor.level(n);
        let sum = Arc::new(
            TernaryGammaModule::direct_sum("pushout", vec![y.level(n).clone(), t.clone()], 1 << 20).expect("sum"),
        );
        let xz = x.level(n).zero();
        let copy_at = |s: usize, v: usize| {
            let mut parts = vec![xz; n + 2];
            parts[s] = v;
            t.encode(&parts)
        };
        let mut pairs = Vec::new();
        for v in 0..x.level(n).size() {
            // simplex 0 is constant at vertex 0, simplex n + 1 constant at 1
            pairs.push((sum.encode(&[y.level(n).zero(), copy_at(0, v)]), sum.zero()));
            pairs.push((
                sum.encode(&[y.level(n).zero(), copy_at(n + 1, v)]),
                sum.encode(&[f.level(n).apply(v), t.zero()]),
            ));
        }
        let cong = congruence_closure(&sum, &pairs).expect("closure");
        let r = reduced.level(n);
        let repr: Vec<usize> = (0..r.size())
            .map(|e| {
                let c = r.components(e);
                let mut parts = vec![xz; n + 2];
                for j in 1..=n {
                    parts[n + 1 - j] = c[j];
                }
                sum.encode(&[c[0], t.encode(&parts)])
            })
            .collect();
        let to = repr.iter().map(|&e| cong.block_of()[e]).collect();
        reprs.push(repr);
        labels.push(cong.block_of().to_vec());
        maps.push(to);
        sums.push(sum);
    }
    PushoutCone {
        tensor,
        sums,
        labels,
        reduced_to_pushout: maps,
        reduced_repr: reprs,
    }
}

impl PushoutCone {
    /// Number of classes at level `n`.
    pub fn size(&self, n: usize) -> usize {
        self.labels[n].iter().collect::<BTreeSet<_>>().len()
    }

    /// Face `d_i` of the pushout applied to the class of `e`.
    pub fn face(&self, y: &SimplicialModule, n: usize, i: usize, e: usize) -> usize {
        let c = self.sums[n].components(e);
        let image = self.sums[n - 1].encode(&[y.face(n, i).apply(c[0]), self.tensor.face(n, i).apply(c[1])]);
        self.labels[n - 1][image]
    }

    /// Some representative of class `k` at level `n`.
    pub fn representative(&self, n: usize, k: usize) -> usize {
        self.labels[n].iter().position(|&l| l == k).expect("class")
    }
}
