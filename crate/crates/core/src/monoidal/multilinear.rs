use std::sync::Arc;

use crate::algebra::{power, require_same_semiring, Derivation, Span, TernaryGammaModule};
use crate::scan::advance;
use crate::{Error, Result};

/// A map `M × N → P`, additive and zero-preserving in each slot and
/// Γ-balanced. The table is row-major: `(m, n)` sits at `m * |N| + n`.
#[derive(Clone, Debug)]
pub struct MultilinearMap {
    pub m: Arc<TernaryGammaModule>,
    pub n: Arc<TernaryGammaModule>,
    pub p: Arc<TernaryGammaModule>,
    pub table: Vec<usize>,
}

impl MultilinearMap {
    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n.size() + y]
    }

    pub fn is_multilinear(&self) -> bool {
        multilinear_violation(&self.m, &self.n, &self.p, &self.table).is_none()
    }
}

/// First violated law of a candidate table, with its witness tuple.
pub fn multilinear_violation(
    m: &TernaryGammaModule,
    n: &TernaryGammaModule,
    p: &TernaryGammaModule,
    table: &[usize],
) -> Option<(&'static str, Vec<usize>)> {
    let (sm, sn) = (m.size(), n.size());
    let f = |x: usize, y: usize| table[x * sn + y];
    for y in 0..sn {
        if f(m.zero(), y) != p.zero() {
            return Some(("zero_first", vec![y]));
        }
    }
    for x in 0..sm {
        if f(x, n.zero()) != p.zero() {
            return Some(("zero_second", vec![x]));
        }
    }
    let scalars = m.semiring().scalar_count();
    for x in 0..sm {
        for y in 0..sn {
            for x2 in 0..sm {
                if f(m.add(x, x2), y) != p.add(f(x, y), f(x2, y)) {
                    return Some(("additive_first", vec![x, x2, y]));
                }
            }
            for y2 in 0..sn {
                if f(x, n.add(y, y2)) != p.add(f(x, y), f(x, y2)) {
                    return Some(("additive_second", vec![x, y, y2]));
                }
            }
            for s in 0..scalars {
                let acted = p.act_scalar(s, f(x, y));
                if f(m.act_scalar(s, x), y) != acted {
                    return Some(("balanced_first", vec![s, x, y]));
                }
                if f(x, n.act_scalar(s, y)) != acted {
                    return Some(("balanced_second", vec![s, x, y]));
                }
            }
        }
    }
    None
}

/// Extends values on pairs of generators to a full table.
fn extend_pairs(
    m: &TernaryGammaModule,
    n: &TernaryGammaModule,
    p: &TernaryGammaModule,
    sm: &Span,
    sn: &Span,
    values: &[usize],
) -> Vec<usize> {
    let cols = n.size();
    let kn = sn.generators.len();
    let mut t = vec![p.zero(); m.size() * cols];
    for &x in &sm.order {
        match sm.how[x].expect("derived") {
            Derivation::Zero => {}
            Derivation::Generator(i) => {
                for &y in &sn.order {
                    t[x * cols + y] = match sn.how[y].expect("derived") {
                        Derivation::Zero => p.zero(),
                        Derivation::Generator(j) => values[i * kn + j],
                        Derivation::Add(a, b) => p.add(t[x * cols + a], t[x * cols + b]),
                        Derivation::Act(s, a) => p.act_scalar(s, t[x * cols + a]),
                    };
                }
            }
            Derivation::Add(a, b) => {
                for y in 0..cols {
                    t[x * cols + y] = p.add(t[a * cols + y], t[b * cols + y]);
                }
            }
            Derivation::Act(s, a) => {
                for y in 0..cols {
                    t[x * cols + y] = p.act_scalar(s, t[a * cols + y]);
                }
            }
        }
    }
    t
}

/// All multilinear maps `M × N → P` in lexicographic order of their tables.
/// A multilinear map is fixed by its values on pairs of generators, so the
/// budget bounds `|P|^(generators of M · generators of N)`.
pub fn enumerate_multilinear(
    m: &Arc<TernaryGammaModule>,
    n: &Arc<TernaryGammaModule>,
    p: &Arc<TernaryGammaModule>,
    budget: u64,
) -> Result<Vec<MultilinearMap>> {
    require_same_semiring(m, n)?;
    require_same_semiring(m, p)?;
    let sm = Span::new(m, None);
    let sn = Span::new(n, None);
    let k = sm.generators.len() * sn.generators.len();
    let candidates = power(p.size(), k);
    if candidates > budget as u128 {
        return Err(Error::SearchSpaceTooLarge {
            what: format!("multilinear maps {} x {} -> {}", m.name(), n.name(), p.name()),
            space: format!(
                "{}^({}*{}) = {} ({} after reduction to generator pairs)",
                p.size(),
                m.size(),
                n.size(),
                power(p.size(), m.size() * n.size()),
                candidates
            ),
            budget,
        });
    }
    let mut out = Vec::new();
    let mut values = vec![0; k];
    let dims = vec![p.size(); k];
    loop {
        let table = extend_pairs(m, n, p, &sm, &sn, &values);
        if multilinear_violation(m, n, p, &table).is_none() {
            out.push(MultilinearMap {
                m: m.clone(),
                n: n.clone(),
                p: p.clone(),
                table,
            });
        }
        if !advance(&mut values, &dims) {
            break;
        }
    }
    Ok(out)
}
