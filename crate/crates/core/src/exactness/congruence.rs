use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::algebra::{ModuleMorphism, TernaryGammaModule};
use crate::{Error, Result};

/// An equivalence relation on a module's carrier, stored as a partition.
/// Blocks are numbered in order of their least element.
#[derive(Clone, Debug)]
pub struct Congruence {
    module: Arc<TernaryGammaModule>,
    block_of: Vec<usize>,
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.block_of == other.block_of
    }
}

impl Eq for Congruence {}

/// Renumbers block labels in order of first occurrence.
pub(crate) fn normalize_blocks(labels: &[usize]) -> Vec<usize> {
    let mut seen = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = seen.len();
            *seen.entry(*l).or_insert(next)
        })
        .collect()
}

impl Congruence {
    /// Partition given by arbitrary block labels; compatibility is not
    /// checked here (see [`Congruence::is_compatible`]).
    pub fn from_labels(module: Arc<TernaryGammaModule>, labels: &[usize]) -> Result<Self> {
        if labels.len() != module.size() {
            return Err(Error::SizeMismatch {
                what: format!("partition of {}", module.name()),
                expected: module.size(),
                actual: labels.len(),
            });
        }
        Ok(Congruence {
            block_of: normalize_blocks(labels),
            module,
        })
    }

    pub fn discrete(module: Arc<TernaryGammaModule>) -> Self {
        let block_of = (0..module.size()).collect();
        Congruence { module, block_of }
    }

    pub fn total(module: Arc<TernaryGammaModule>) -> Self {
        let block_of = vec![0; module.size()];
        Congruence { module, block_of }
    }

    pub fn module(&self) -> &Arc<TernaryGammaModule> {
        &self.module
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().copied().max().map_or(0, |b| b + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count() == self.module.size()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// First pair `(x, y)` of related elements and operation breaking
    /// compatibility, if any.
    pub fn compatibility_witness(&self) -> Option<(usize, usize)> {
        let m = &self.module;
        let scalars = m.semiring().scalar_count();
        let reps = self.representatives();
        for x in 0..m.size() {
            let r = reps[self.block_of[x]];
            if r == x {
                continue;
            }
            for y in 0..m.size() {
                if !self.related(m.add(x, y), m.add(r, y)) {
                    return Some((x, r));
                }
            }
            for s in 0..scalars {
                if !self.related(m.act_scalar(s, x), m.act_scalar(s, r)) {
                    return Some((x, r));
                }
            }
        }
        None
    }

    pub fn is_compatible(&self) -> bool {
        self.compatibility_witness().is_none()
    }

    /// Least element of each block.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = x;
            }
        }
        reps
    }

    /// Pairs generating this congruence (each element with its block's
    /// representative).
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        let reps = self.representatives();
        (0..self.module.size())
            .filter_map(|x| {
                let r = reps[self.block_of[x]];
                (r != x).then_some((r, x))
            })
            .collect()
    }
}

/// Least congruence containing `pairs`, by union-find with saturation under
/// addition and the action until nothing changes.
pub fn congruence_closure(m: &Arc<TernaryGammaModule>, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = m.size();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(Error::malformed(
            format!("pair for {}", m.name()),
            format!("({x}, {y}) out of range"),
        ));
    }
    let mut uf = UnionFind::<usize>::new(n);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    let scalars = m.semiring().scalar_count();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for y in 0..n {
                changed |= uf.union(m.add(x, y), m.add(r, y));
            }
            for s in 0..scalars {
                changed |= uf.union(m.act_scalar(s, x), m.act_scalar(s, r));
            }
        }
        if !changed {
            break;
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_labels(m.clone(), &labels)
}

/// The quotient module and its projection. Well-definedness of the induced
/// operations is re-verified on every pair.
pub fn quotient(c: &Congruence) -> Result<(Arc<TernaryGammaModule>, ModuleMorphism)> {
    let m = c.module();
    if let Some((x, y)) = c.compatibility_witness() {
        return Err(Error::Inconsistent(format!(
            "partition of {} is not a congruence: operations separate {} and {}",
            m.name(),
            m.element_name(x),
            m.element_name(y)
        )));
    }
    let q = Arc::new(TernaryGammaModule::quotient_unchecked(
        format!("{}/~", m.name()),
        m.clone(),
        c.block_of().to_vec(),
    ));
    let p = ModuleMorphism::new(
        format!("q_{}", m.name()),
        m.clone(),
        q.clone(),
        c.block_of().to_vec(),
    )?;
    Ok((q, p))
}

/// Fibers of `f`.
pub fn kernel_pair(f: &ModuleMorphism) -> Congruence {
    Congruence::from_labels(f.source().clone(), f.table()).expect("kernel pair")
}

/// Coequalizer of a parallel pair: quotient of the target by the closure
/// of `{(f x, g x)}`.
pub fn coequalizer(
    f: &ModuleMorphism,
    g: &ModuleMorphism,
) -> Result<(Arc<TernaryGammaModule>, ModuleMorphism)> {
    if f.source().size() != g.source().size() || f.target().size() != g.target().size() {
        return Err(Error::Precondition(format!(
            "{} and {} are not parallel",
            f.name(),
            g.name()
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..f.source().size())
        .map(|x| (f.apply(x), g.apply(x)))
        .collect();
    let c = congruence_closure(f.target(), &pairs)?;
    quotient(&c)
}

/// All congruences of a module with at most 8 elements, in order of their
/// restricted-growth labelings.
pub fn enumerate_congruences(m: &Arc<TernaryGammaModule>) -> Result<Vec<Congruence>> {
    let n = m.size();
    if n > 8 {
        return Err(Error::SearchSpaceTooLarge {
            what: format!("partitions of {}", m.name()),
            space: format!("Bell({n})"),
            budget: 4140,
        });
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    partitions(m, &mut labels, 1, 0, &mut out);
    Ok(out)
}

fn partitions(
    m: &Arc<TernaryGammaModule>,
    labels: &mut Vec<usize>,
    pos: usize,
    max: usize,
    out: &mut Vec<Congruence>,
) {
    if pos >= labels.len() {
        let c = Congruence {
            module: m.clone(),
            block_of: labels.clone(),
        };
        if c.is_compatible() {
            out.push(c);
        }
        return;
    }
    for l in 0..=max + 1 {
        labels[pos] = l;
        partitions(m, labels, pos + 1, max.max(l), out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_module, check_morphism, product_module};
    use crate::corpus;

    #[test]
    fn closure_basics() {
        let m = Arc::new(corpus::mb1());
        assert!(congruence_closure(&m, &[]).unwrap().is_discrete());
        assert!(congruence_closure(&m, &[(0, 1)]).unwrap().is_total());
        let p = Arc::new(corpus::mb1_squared());
        let c = congruence_closure(&p, &[(1, 0)]).unwrap();
        let again = congruence_closure(&p, &c.generating_pairs()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn quotient_of_square_by_second_coordinate() {
        let m = Arc::new(corpus::mb1());
        let p = Arc::new(product_module(&m, &m, 16).unwrap());
        let c = congruence_closure(&p, &[(p.encode(&[0, 1]), p.encode(&[0, 0]))]).unwrap();
        // (0,1)~(0,0) forces (1,1)~(1,0) by addition with (1,0), nothing else
        assert_eq!(c.classes(), vec![vec![0, 1], vec![2, 3]]);
        let (q, proj) = quotient(&c).unwrap();
        assert_eq!(q.size(), 2);
        assert!(check_module(&q, true).unwrap().passed());
        assert!(check_morphism(&proj).passed() && proj.is_surjective());
        assert_eq!(kernel_pair(&proj), c);
    }

    #[test]
    fn discrete_and_total_quotients() {
        let m = Arc::new(corpus::mz3());
        let (q, p) = quotient(&Congruence::discrete(m.clone())).unwrap();
        assert_eq!(q.size(), 3);
        assert!(p.is_bijective());
        let (q, _) = quotient(&Congruence::total(m.clone())).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn non_congruence_is_refused() {
        let m = Arc::new(corpus::mz3());
        let c = Congruence::from_labels(m, &[0, 0, 1]).unwrap();
        assert!(matches!(quotient(&c), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn coequalizer_examples() {
        let m = Arc::new(corpus::mb1());
        let id = ModuleMorphism::identity(m.clone());
        let zero = ModuleMorphism::zero(m.clone(), m.clone()).unwrap();
        assert_eq!(coequalizer(&id, &id).unwrap().0.size(), 2);
        assert_eq!(coequalizer(&id, &zero).unwrap().0.size(), 1);
    }

    #[test]
    fn kernel_pairs_of_identity_and_zero() {
        let m = Arc::new(corpus::mb1());
        assert!(kernel_pair(&ModuleMorphism::identity(m.clone())).is_discrete());
        assert!(kernel_pair(&ModuleMorphism::zero(m.clone(), m).unwrap()).is_total());
    }

    #[test]
    fn congruences_of_z3_are_trivial_ones() {
        let m = Arc::new(corpus::mz3());
        let all = enumerate_congruences(&m).unwrap();
        assert_eq!(all.len(), 2);
    }
}
