//! Finite simplicial sets truncated at a top level.

use std::collections::HashMap;

use crate::{Error, Result};

/// A simplicial set with finitely many simplices in each level
/// `0..=truncation`. `faces[n][i]: K_n → K_{n-1}` for `n ≥ 1`,
/// `degeneracies[n][i]: K_n → K_{n+1}` for `n < truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    pub name: String,
    pub counts: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
    /// Display label of every simplex.
    pub labels: Vec<Vec<String>>,
}

/// A simplex of a nerve-like set: one nondecreasing vertex sequence per
/// coordinate (one coordinate for Δ[k], two for Δ[k] × Δ[l]).
pub type Simplex = Vec<Vec<usize>>;

impl FiniteSimplicialSet {
    pub fn truncation(&self) -> usize {
        self.counts.len() - 1
    }

    /// Builds the set whose `n`-simplices are all tuples of nondecreasing
    /// sequences of length `n + 1` with values below `bounds[c] + 1` in
    /// coordinate `c`; faces delete and degeneracies repeat a position.
    /// Simplices are listed in lexicographic order.
    pub fn nerve_product(name: impl Into<String>, bounds: &[usize], truncation: usize) -> Self {
        let levels: Vec<Vec<Simplex>> = (0..=truncation)
            .map(|n| product_sequences(bounds, n + 1))
            .collect();
        let index: Vec<HashMap<Simplex, usize>> = levels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut faces = vec![Vec::new(); truncation + 1];
        let mut degeneracies = vec![Vec::new(); truncation + 1];
        for n in 0..=truncation {
            if n >= 1 {
                faces[n] = (0..=n)
                    .map(|i| {
                        levels[n]
                            .iter()
                            .map(|s| index[n - 1][&delete(s, i)])
                            .collect()
                    })
                    .collect();
            }
            if n < truncation {
                degeneracies[n] = (0..=n)
                    .map(|i| {
                        levels[n]
                            .iter()
                            .map(|s| index[n + 1][&repeat(s, i)])
                            .collect()
                    })
                    .collect();
            }
        }
        let labels = levels
            .iter()
            .map(|l| l.iter().map(|s| label(s)).collect())
            .collect();
        FiniteSimplicialSet {
            name: name.into(),
            counts: levels.iter().map(|l| l.len()).collect(),
            faces,
            degeneracies,
            labels,
        }
    }

    /// The standard simplex Δ[k].
    pub fn delta(k: usize, truncation: usize) -> Self {
        Self::nerve_product(format!("D{k}"), &[k], truncation)
    }

    /// A point.
    pub fn point(truncation: usize) -> Self {
        Self::delta(0, truncation)
    }

    /// `points` isolated vertices.
    pub fn discrete(points: usize, truncation: usize) -> Self {
        let ident: Vec<usize> = (0..points).collect();
        FiniteSimplicialSet {
            name: format!("disc{points}"),
            counts: vec![points; truncation + 1],
            faces: (0..=truncation)
                .map(|n| vec![ident.clone(); if n == 0 { 0 } else { n + 1 }])
                .collect(),
            degeneracies: (0..=truncation)
                .map(|n| vec![ident.clone(); if n < truncation { n + 1 } else { 0 }])
                .collect(),
            labels: vec![(0..points).map(|p| format!("p{p}")).collect(); truncation + 1],
        }
    }

    /// The circle Δ[1]/∂Δ[1].
    pub fn circle(truncation: usize) -> Self {
        let d1 = Self::delta(1, truncation);
        // the two constant simplices in every level form the boundary
        let boundary: Vec<Vec<usize>> = d1
            .counts
            .iter()
            .map(|&c| vec![0, c - 1])
            .collect();
        d1.collapse(&boundary).expect("boundary is a subcomplex").renamed("S1")
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Identifies all simplices of the simplicial subset `sub` (given per
    /// level) with a single base simplex in each level.
    pub fn collapse(&self, sub: &[Vec<usize>]) -> Result<Self> {
        let top = self.truncation();
        let mut new_index: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        let mut counts = Vec::with_capacity(top + 1);
        let mut labels = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut inside = vec![false; self.counts[n]];
            for &s in &sub[n] {
                inside[s] = true;
            }
            let mut idx = vec![0; self.counts[n]];
            let mut lab = Vec::new();
            let has_base = !sub[n].is_empty();
            if has_base {
                lab.push("*".to_string());
            }
            let mut next = usize::from(has_base);
            for s in 0..self.counts[n] {
                if inside[s] {
                    idx[s] = 0;
                } else {
                    idx[s] = next;
                    next += 1;
                    lab.push(self.labels[n][s].clone());
                }
            }
            counts.push(next);
            labels.push(lab);
            new_index.push(idx);
        }
        let induced = |map: &Vec<usize>, from: usize, to: usize| -> Result<Vec<usize>> {
            let mut out = vec![usize::MAX; counts[from]];
            for s in 0..self.counts[from] {
                let (a, b) = (new_index[from][s], new_index[to][map[s]]);
                if out[a] != usize::MAX && out[a] != b {
                    return Err(Error::Precondition(format!(
                        "collapsed set is not a simplicial subset of {}",
                        self.name
                    )));
                }
                out[a] = b;
            }
            Ok(out)
        };
        let mut faces = vec![Vec::new(); top + 1];
        let mut degeneracies = vec![Vec::new(); top + 1];
        for n in 0..=top {
            for map in &self.faces[n] {
                faces[n].push(induced(map, n, n - 1)?);
            }
            for map in &self.degeneracies[n] {
                degeneracies[n].push(induced(map, n, n + 1)?);
            }
        }
        Ok(FiniteSimplicialSet {
            name: format!("{}/~", self.name),
            counts,
            faces,
            degeneracies,
            labels,
        })
    }

    /// Whether `s` is the image of a degeneracy.
    pub fn is_degenerate(&self, n: usize, s: usize) -> bool {
        n > 0 && self.degeneracies[n - 1].iter().any(|d| d.contains(&s))
    }
}

/// All `coords`-tuples of nondecreasing sequences of length `len`.
fn product_sequences(bounds: &[usize], len: usize) -> Vec<Simplex> {
    let mut out: Vec<Simplex> = vec![Vec::new()];
    for &b in bounds {
        let seqs = nondecreasing(b, len);
        let mut next = Vec::with_capacity(out.len() * seqs.len());
        for prefix in &out {
            for s in &seqs {
                let mut t = prefix.clone();
                t.push(s.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Nondecreasing sequences of length `len` in `0..=max`, lexicographic.
pub(crate) fn nondecreasing(max: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(max: usize, len: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            rec(max, len, v, cur, out);
            cur.pop();
        }
    }
    rec(max, len, 0, &mut cur, &mut out);
    out
}

pub(crate) fn delete(s: &Simplex, i: usize) -> Simplex {
    s.iter()
        .map(|c| {
            let mut c = c.clone();
            c.remove(i);
            c
        })
        .collect()
}

pub(crate) fn repeat(s: &Simplex, i: usize) -> Simplex {
    s.iter()
        .map(|c| {
            let mut c = c.clone();
            c.insert(i, c[i]);
            c
        })
        .collect()
}

fn label(s: &Simplex) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|c| c.iter().map(|v| v.to_string()).collect::<String>())
        .collect();
    parts.join("x")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        let d1 = FiniteSimplicialSet::delta(1, 3);
        assert_eq!(d1.counts, vec![2, 3, 4, 5]);
        let d2 = FiniteSimplicialSet::delta(2, 3);
        assert_eq!(d2.counts, vec![3, 6, 10, 15]);
        let s1 = FiniteSimplicialSet::circle(3);
        assert_eq!(s1.counts, vec![1, 2, 3, 4]);
        let sq = FiniteSimplicialSet::nerve_product("D1xD1", &[1, 1], 2);
        assert_eq!(sq.counts, vec![4, 9, 16]);
    }

    #[test]
    fn degenerate_simplices_of_delta1() {
        let d1 = FiniteSimplicialSet::delta(1, 2);
        let nondeg: Vec<usize> = (0..d1.counts[1]).filter(|&s| !d1.is_degenerate(1, s)).collect();
        assert_eq!(nondeg.len(), 1);
        assert!((0..d1.counts[2]).all(|s| d1.is_degenerate(2, s)));
    }
}
