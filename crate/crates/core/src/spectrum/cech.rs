use std::sync::Arc;

use super::sheaf::{compare_cover, TriadicSheaf};
use super::space::unite;
use crate::algebra::TernaryGammaModule;
use crate::config::WorkbenchConfig;
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::simplicial::{cohomology_with_signs, cosimplicial_equalizer, CohomologyModule};
use crate::{Error, Result};

/// How the Čech object is read: cochains, with products of sections over
/// ordered intersections.
pub const CECH_READING: &str =
    "cosimplicial: C^p is the product of sections over the intersections U_{i_0} ∩ … ∩ U_{i_p}, i_0 < … < i_p";

/// The Čech cochains of a sheaf on a cover.
#[derive(Clone, Debug)]
pub struct CechComplex {
    /// Open indices of the cover.
    pub cover: Vec<usize>,
    /// Union of the cover, as an open index.
    pub union: usize,
    /// `tuples[p]`: increasing `(p+1)`-tuples of cover positions.
    pub tuples: Vec<Vec<Vec<usize>>>,
    /// `meets[p][t]`: open index of the intersection for `tuples[p][t]`.
    pub meets: Vec<Vec<usize>>,
    pub terms: Vec<Arc<TernaryGammaModule>>,
    /// `cofaces[p][j]: C^{p-1} → C^p` for `p ≥ 1`, omitting position `j`.
    pub cofaces: Vec<Vec<Vec<usize>>>,
    pub report: AxiomReport,
}

fn increasing_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, len, &mut Vec::new(), &mut out);
    out
}

fn components(m: &TernaryGammaModule, factors: usize, x: usize) -> Vec<usize> {
    if factors == 0 {
        Vec::new()
    } else {
        m.components(x)
    }
}

fn encode(m: &TernaryGammaModule, parts: &[usize]) -> usize {
    if parts.is_empty() {
        m.zero()
    } else {
        m.encode(parts)
    }
}

/// Builds `C^0, …, C^upto` (at least up to the number of cover members, where
/// the products become empty) and replays the cosimplicial identities.
pub fn cech_complex_upto(f: &TriadicSheaf, cover: &[usize], upto: usize, config: &WorkbenchConfig) -> Result<CechComplex> {
    if cover.is_empty() {
        return Err(Error::Precondition("the cover is empty".into()));
    }
    if let Some(&c) = cover.iter().find(|&&c| c >= f.space.opens.len()) {
        return Err(Error::Precondition(format!("{c} is not an open")));
    }
    let mut u = Vec::new();
    for &c in cover {
        u = unite(&u, &f.space.opens[c]);
    }
    let union = f
        .space
        .index_of(&u)
        .ok_or_else(|| Error::Precondition("the union of the cover is not open".into()))?;
    let top = upto.max(cover.len());
    let zero = Arc::new(TernaryGammaModule::zero_module(f.semiring().clone()));
    let mut tuples = Vec::with_capacity(top + 1);
    let mut meets = Vec::with_capacity(top + 1);
    let mut terms = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let ts = increasing_tuples(cover.len(), p + 1);
        let ms = ts
            .iter()
            .map(|t| {
                let mut o = cover[t[0]];
                for &i in &t[1..] {
                    o = f
                        .space
                        .intersection(o, cover[i])
                        .ok_or_else(|| Error::Precondition("an intersection of the cover is not open".into()))?;
                }
                Ok(o)
            })
            .collect::<Result<Vec<_>>>()?;
        let term = if ms.is_empty() {
            zero.clone()
        } else {
            Arc::new(TernaryGammaModule::direct_sum(
                format!("C^{p}"),
                ms.iter().map(|&o| f.sections[o].clone()).collect(),
                config.element_budget,
            )?)
        };
        tuples.push(ts);
        meets.push(ms);
        terms.push(term);
    }
    let mut cofaces = vec![Vec::new()];
    for p in 1..=top {
        let mut row = Vec::with_capacity(p + 1);
        for j in 0..=p {
            // for each target tuple: the source tuple without position j
            let legs = tuples[p]
                .iter()
                .zip(&meets[p])
                .map(|(t, &meet)| {
                    let mut s = t.clone();
                    s.remove(j);
                    let k = tuples[p - 1].iter().position(|q| *q == s).expect("face tuple");
                    let r = f
                        .restriction(meets[p - 1][k], meet)
                        .ok_or_else(|| Error::Precondition(format!("missing restriction ({}, {meet})", meets[p - 1][k])))?;
                    Ok((k, r.into_owned()))
                })
                .collect::<Result<Vec<_>>>()?;
            let src = &terms[p - 1];
            let table: Vec<usize> = (0..src.size())
                .map(|x| {
                    let c = components(src, tuples[p - 1].len(), x);
                    let parts: Vec<usize> = legs.iter().map(|(k, r)| r.apply(c[*k])).collect();
                    encode(&terms[p], &parts)
                })
                .collect();
            row.push(table);
        }
        cofaces.push(row);
    }
    let mut report = AxiomReport::new(format!("Cech({}, {:?})", f.name, cover), config.strict_zero);
    report.artifact("reading", CECH_READING);
    report.artifact("term_sizes", terms.iter().map(|t| t.size()).collect::<Vec<_>>());
    report.artifact("factors", tuples.iter().map(|t| t.len()).collect::<Vec<_>>());
    let mut broken = None;
    'search: for p in 2..=top {
        for j in 1..=p {
            for i in 0..j {
                for x in 0..terms[p - 2].size() {
                    let lhs = cofaces[p][j][cofaces[p - 1][i][x]];
                    let rhs = cofaces[p][i][cofaces[p - 1][j - 1][x]];
                    if lhs != rhs {
                        broken = Some(Witness::unlabeled(vec![p, i, j, x]));
                        break 'search;
                    }
                }
            }
        }
    }
    report.push(Check::from_outcome("cosimplicial_identities", Tier::Structural, broken));
    Ok(CechComplex {
        cover: cover.to_vec(),
        union,
        tuples,
        meets,
        terms,
        cofaces,
        report,
    })
}

pub fn cech_complex(f: &TriadicSheaf, cover: &[usize], config: &WorkbenchConfig) -> Result<CechComplex> {
    cech_complex_upto(f, cover, 0, config)
}

#[derive(Clone, Debug)]
pub enum CechValue {
    Computed(CohomologyModule),
    Unavailable(String),
}

#[derive(Clone, Debug)]
pub struct CechCohomology {
    pub degree: usize,
    pub value: CechValue,
    pub report: AxiomReport,
}

/// `Ȟ^p` of the cover: the equalizer of the two cofaces in degree 0, and
/// alternating-sum cohomology above when the terms involved are groups.
/// Degree 0 is compared with the sections over the union of the cover.
pub fn cech_cohomology(f: &TriadicSheaf, cover: &[usize], p: usize, config: &WorkbenchConfig) -> Result<CechCohomology> {
    let cx = cech_complex_upto(f, cover, p + 1, config)?;
    let mut report = cx.report.clone();
    report.subject = format!("H^{p}(Cech({}, {:?}))", f.name, cover);
    let name = format!("Cech({})", f.name);
    let value = if p == 0 {
        let h = cosimplicial_equalizer(&cx.terms, &cx.cofaces, &name)?;
        let cmp = compare_cover(f, cover, config.element_budget)?;
        let injective = cmp.injectivity_witness();
        let image = cmp.tuple.image();
        let unglued = h.cocycles.iter().copied().find(|e| image.binary_search(e).is_err());
        let stray = image.iter().copied().find(|e| h.cocycles.binary_search(e).is_err());
        let witness = match (injective, unglued, stray) {
            (Some((x, y)), _, _) => Some(Witness::unlabeled(vec![0, x, y])),
            (None, Some(e), _) => Some(Witness::unlabeled(vec![1, e])),
            (None, None, Some(e)) => Some(Witness::unlabeled(vec![2, e])),
            _ => None,
        };
        report.push(Check::from_outcome("equals_sections_over_union", Tier::Structural, witness));
        CechValue::Computed(h)
    } else {
        match cohomology_with_signs(&cx.terms, &cx.cofaces, p, &name)? {
            Some(h) => CechValue::Computed(h),
            None => CechValue::Unavailable(format!("C^{} or C^{p} or C^{} is not group-complete", p - 1, p + 1)),
        }
    };
    match &value {
        CechValue::Computed(h) => {
            report.push(Check::pass("computed", Tier::Structural));
            report.artifact("size", h.size());
        }
        CechValue::Unavailable(why) => {
            report.push(Check::unavailable("computed", Tier::Structural));
            report.artifact("unavailable", why);
        }
    }
    Ok(CechCohomology { degree: p, value, report })
}
