use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::algebra::{submodule, ModuleMorphism, TernaryGammaModule};
use crate::exactness::{quotient, Congruence};
use crate::{Error, Result};

/// `H^k` of a cochain complex of modules: cocycles (preimage of zero)
/// modulo the congruence identifying coboundaries with zero.
#[derive(Clone, Debug)]
pub struct CohomologyModule {
    pub degree: usize,
    /// Cocycles as elements of `C^k`.
    pub cocycles: Vec<usize>,
    /// Coboundaries as elements of `C^k`.
    pub coboundaries: Vec<usize>,
    pub module: Arc<TernaryGammaModule>,
    /// Class of every cocycle, aligned with `cocycles`.
    pub classes: Vec<usize>,
}

impl CohomologyModule {
    pub fn size(&self) -> usize {
        self.module.size()
    }

    /// Class of an element of `C^k`, if it is a cocycle.
    pub fn class_of(&self, c: usize) -> Option<usize> {
        self.cocycles.binary_search(&c).ok().map(|i| self.classes[i])
    }
}

/// Cohomology in degree `k` of `terms` with `coboundaries[k]: C^k → C^{k+1}`.
/// Degrees without an outgoing map treat it as zero.
pub fn cochain_cohomology(
    terms: &[Arc<TernaryGammaModule>],
    coboundaries: &[ModuleMorphism],
    k: usize,
    name: &str,
) -> Result<CohomologyModule> {
    let c = terms
        .get(k)
        .ok_or_else(|| Error::Precondition(format!("no cochains in degree {k}")))?;
    let mut cocycles: Vec<usize> = match coboundaries.get(k) {
        Some(d) => d.zero_fiber(),
        None => (0..c.size()).collect(),
    };
    cocycles.sort_unstable();
    let mut coboundary_elems: Vec<usize> = if k == 0 {
        vec![c.zero()]
    } else {
        coboundaries[k - 1].image()
    };
    coboundary_elems.sort_unstable();
    coboundary_elems.dedup();
    let z = Arc::new(submodule(format!("Z^{k}({name})"), c, &cocycles)?);
    let pos = |e: usize| cocycles.binary_search(&e).map_err(|_| Error::Inconsistent(format!("a coboundary in degree {k} is not a cocycle")));
    let b: Vec<usize> = coboundary_elems.iter().map(|&e| pos(e)).collect::<Result<_>>()?;
    let mut uf = UnionFind::<usize>::new(z.size());
    for x in 0..z.size() {
        for &y in &b {
            uf.union(x, z.add(x, y));
        }
    }
    let labels: Vec<usize> = (0..z.size()).map(|x| uf.find(x)).collect();
    let congruence = Congruence::from_labels(z, &labels)?;
    let (q, p) = quotient(&congruence)?;
    let module = Arc::new(q.as_ref().clone().renamed(format!("H^{k}({name})")));
    Ok(CohomologyModule {
        degree: k,
        classes: p.table().to_vec(),
        cocycles,
        coboundaries: coboundary_elems,
        module,
    })
}

/// `Σ (-1)^i maps[i]` as a table; `None` when a needed negative is missing.
pub fn alternating_sum(
    target: &TernaryGammaModule,
    source_size: usize,
    maps: &[Vec<usize>],
) -> Option<Vec<usize>> {
    (0..source_size)
        .map(|x| {
            maps.iter().enumerate().try_fold(target.zero(), |acc, (i, m)| {
                let v = if i % 2 == 0 { m[x] } else { target.negate(m[x])? };
                Some(target.add(acc, v))
            })
        })
        .collect()
}

/// Degree 0 of a cosimplicial module: the equalizer of the two cofaces
/// `C^0 ⇉ C^1`, or all of `C^0` when there is no `C^1`.
pub fn cosimplicial_equalizer(
    terms: &[Arc<TernaryGammaModule>],
    cofaces: &[Vec<Vec<usize>>],
    name: &str,
) -> Result<CohomologyModule> {
    let c0 = &terms[0];
    let members: Vec<usize> = match cofaces.get(1) {
        Some(d) => (0..c0.size()).filter(|&x| d[0][x] == d[1][x]).collect(),
        None => (0..c0.size()).collect(),
    };
    let eq = Arc::new(submodule(format!("H^0({name})"), c0, &members)?);
    let classes = (0..members.len()).collect();
    Ok(CohomologyModule {
        degree: 0,
        cocycles: members,
        coboundaries: vec![c0.zero()],
        module: eq,
        classes,
    })
}

/// Alternating-sum cochain cohomology of a cosimplicial module in
/// `degree`; `None` when a term involved lacks additive inverses.
/// `cofaces[k][i]: C^{k-1} → C^k`; missing terms past the end count as zero.
pub fn cohomology_with_signs(
    terms: &[Arc<TernaryGammaModule>],
    cofaces: &[Vec<Vec<usize>>],
    degree: usize,
    name: &str,
) -> Result<Option<CohomologyModule>> {
    if degree >= terms.len() {
        return Err(Error::Precondition(format!("no cochains in degree {degree}")));
    }
    let hi = (degree + 1).min(terms.len() - 1);
    if !terms[degree.saturating_sub(1)..=hi].iter().all(|t| t.is_group_complete()) {
        return Ok(None);
    }
    let mut coboundaries = Vec::new();
    for k in 0..hi {
        let d = if k + 1 >= degree {
            let table = alternating_sum(&terms[k + 1], terms[k].size(), &cofaces[k + 1])
                .ok_or_else(|| Error::Inconsistent("missing negative in a group-complete term".into()))?;
            ModuleMorphism::new(format!("delta{k}"), terms[k].clone(), terms[k + 1].clone(), table)?
        } else {
            // never read for this degree
            ModuleMorphism::zero(terms[k].clone(), terms[k + 1].clone())?
        };
        coboundaries.push(d);
    }
    cochain_cohomology(terms, &coboundaries, degree, name).map(Some)
}
