use std::borrow::Cow;
use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::space::{check_topology, unite, FiniteSpace};
use crate::algebra::{check_module, check_morphism, ModuleMorphism, TernaryGammaModule, TernaryGammaSemiring};
use crate::config::WorkbenchConfig;
use crate::exactness::equalizer;
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::{Error, Result};

/// A presheaf of modules on a finite space: one module per open and one
/// restriction per strict inclusion `small ⊂ big`, keyed `(big, small)`.
#[derive(Clone, Debug)]
pub struct TriadicSheaf {
    pub name: String,
    pub space: FiniteSpace,
    pub sections: Vec<Arc<TernaryGammaModule>>,
    pub restrictions: BTreeMap<(usize, usize), ModuleMorphism>,
}

impl TriadicSheaf {
    pub fn new(
        name: impl Into<String>,
        space: FiniteSpace,
        sections: Vec<Arc<TernaryGammaModule>>,
        restrictions: BTreeMap<(usize, usize), ModuleMorphism>,
    ) -> Result<Self> {
        let name = name.into();
        if sections.len() != space.opens.len() {
            return Err(Error::SizeMismatch {
                what: format!("sections of {name}"),
                expected: space.opens.len(),
                actual: sections.len(),
            });
        }
        for (&(big, small), r) in &restrictions {
            if big >= sections.len() || small >= sections.len() || big == small || !space.is_subset(small, big) {
                return Err(Error::malformed(
                    format!("sheaf {name}"),
                    format!("restriction ({big}, {small}) is not along a strict inclusion of opens"),
                ));
            }
            if !r.source().same_tables(&sections[big]) || !r.target().same_tables(&sections[small]) {
                return Err(Error::malformed(
                    format!("sheaf {name}"),
                    format!("restriction ({big}, {small}) does not run between the section modules"),
                ));
            }
        }
        Ok(TriadicSheaf {
            name,
            space,
            sections,
            restrictions,
        })
    }

    pub fn semiring(&self) -> &Arc<TernaryGammaSemiring> {
        self.sections[0].semiring()
    }

    /// The restriction from `big` to `small`, the identity when they agree.
    pub fn restriction(&self, big: usize, small: usize) -> Option<Cow<'_, ModuleMorphism>> {
        if big == small {
            return Some(Cow::Owned(ModuleMorphism::identity(self.sections[big].clone())));
        }
        self.restrictions.get(&(big, small)).map(Cow::Borrowed)
    }

    /// Functions from points into `m`: sections over `U` are `m^U` and
    /// restriction forgets coordinates. A sheaf on every finite space; on a
    /// discrete space it is the constant sheaf.
    pub fn functions_into(space: FiniteSpace, m: Arc<TernaryGammaModule>, element_budget: usize) -> Result<Self> {
        let zero = Arc::new(TernaryGammaModule::zero_module(m.semiring().clone()));
        let sections = space
            .opens
            .iter()
            .enumerate()
            .map(|(k, o)| {
                if o.is_empty() {
                    Ok(zero.clone())
                } else {
                    TernaryGammaModule::direct_sum(format!("{}^{}", m.name(), space.open_label(k)), vec![m.clone(); o.len()], element_budget)
                        .map(Arc::new)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut restrictions = BTreeMap::new();
        for big in 0..space.opens.len() {
            for small in 0..space.opens.len() {
                if big == small || !space.is_subset(small, big) {
                    continue;
                }
                let keep: Vec<usize> = space.opens[small]
                    .iter()
                    .map(|p| space.opens[big].binary_search(p).expect("subset"))
                    .collect();
                let (src, dst) = (&sections[big], &sections[small]);
                let r = ModuleMorphism::from_fn(format!("res{big}_{small}"), src.clone(), dst.clone(), |x| {
                    if keep.is_empty() {
                        return dst.zero();
                    }
                    let c = src.components(x);
                    dst.encode(&keep.iter().map(|&i| c[i]).collect::<Vec<_>>())
                })?;
                restrictions.insert((big, small), r);
            }
        }
        TriadicSheaf::new(format!("Fun({})", m.name()), space, sections, restrictions)
    }

    /// `m` on every nonempty open with identity restrictions, zero on the
    /// empty open. Not a sheaf once two disjoint nonempty opens exist.
    pub fn constant_presheaf(space: FiniteSpace, m: Arc<TernaryGammaModule>) -> Result<Self> {
        let zero = Arc::new(TernaryGammaModule::zero_module(m.semiring().clone()));
        let sections: Vec<_> = space
            .opens
            .iter()
            .map(|o| if o.is_empty() { zero.clone() } else { m.clone() })
            .collect();
        let mut restrictions = BTreeMap::new();
        for big in 0..space.opens.len() {
            for small in 0..space.opens.len() {
                if big != small && space.is_subset(small, big) {
                    let r = if space.opens[small].is_empty() {
                        ModuleMorphism::zero(sections[big].clone(), zero.clone())?
                    } else {
                        ModuleMorphism::identity(m.clone())
                    };
                    restrictions.insert((big, small), r.renamed(format!("res{big}_{small}")));
                }
            }
        }
        TriadicSheaf::new(format!("const({})", m.name()), space, sections, restrictions)
    }
}

/// Every strict inclusion `(big, small)` of opens.
fn inclusions(space: &FiniteSpace) -> Vec<(usize, usize)> {
    let n = space.opens.len();
    (0..n)
        .flat_map(|b| (0..n).map(move |s| (b, s)))
        .filter(|&(b, s)| b != s && space.is_subset(s, b))
        .collect()
}

/// Sections over the union of `cover` compared with the compatible
/// families: the restriction tuple `F(U) → ∏ F(U_i)`, and the equalizer of
/// the two maps into `∏_{i<j} F(U_i ∩ U_j)`.
pub struct CoverComparison {
    pub union: usize,
    pub product: Arc<TernaryGammaModule>,
    pub tuple: ModuleMorphism,
    pub compatible: Arc<TernaryGammaModule>,
    pub compatible_inclusion: ModuleMorphism,
}

impl CoverComparison {
    /// Two sections with the same restrictions, if any.
    pub fn injectivity_witness(&self) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.product.size()];
        for x in 0..self.tuple.source().size() {
            let y = self.tuple.apply(x);
            if seen[y] != usize::MAX {
                return Some((seen[y], x));
            }
            seen[y] = x;
        }
        None
    }

    /// A compatible family not glued from any section, as an element of the
    /// product.
    pub fn gluing_witness(&self) -> Option<usize> {
        let image = self.tuple.image();
        self.compatible_inclusion
            .table()
            .iter()
            .copied()
            .find(|e| image.binary_search(e).is_err())
    }

    pub fn holds(&self) -> bool {
        self.injectivity_witness().is_none() && self.gluing_witness().is_none()
    }
}

/// Builds the comparison for a nonempty cover whose union is open.
pub fn compare_cover(f: &TriadicSheaf, cover: &[usize], element_budget: usize) -> Result<CoverComparison> {
    if cover.is_empty() {
        return Err(Error::Precondition("an empty cover has no product to compare".into()));
    }
    let mut u = Vec::new();
    for &c in cover {
        u = unite(&u, &f.space.opens[c]);
    }
    let union = f
        .space
        .index_of(&u)
        .ok_or_else(|| Error::Precondition("the union of the cover is not open".into()))?;
    let missing = |b: usize, s: usize| Error::Precondition(format!("missing restriction ({b}, {s})"));
    let product = Arc::new(TernaryGammaModule::direct_sum(
        "prod",
        cover.iter().map(|&c| f.sections[c].clone()).collect(),
        element_budget,
    )?);
    let legs = cover
        .iter()
        .map(|&c| f.restriction(union, c).ok_or_else(|| missing(union, c)))
        .collect::<Result<Vec<_>>>()?;
    let tuple = ModuleMorphism::from_fn("restrict", f.sections[union].clone(), product.clone(), |x| {
        product.encode(&legs.iter().map(|r| r.apply(x)).collect::<Vec<_>>())
    })?;
    let mut pairs = Vec::new();
    for a in 0..cover.len() {
        for b in a + 1..cover.len() {
            let meet = f
                .space
                .intersection(cover[a], cover[b])
                .ok_or_else(|| Error::Precondition("an intersection of the cover is not open".into()))?;
            let ra = f.restriction(cover[a], meet).ok_or_else(|| missing(cover[a], meet))?;
            let rb = f.restriction(cover[b], meet).ok_or_else(|| missing(cover[b], meet))?;
            pairs.push((a, b, meet, ra, rb));
        }
    }
    let (compatible, compatible_inclusion) = if pairs.is_empty() {
        let id = ModuleMorphism::identity(product.clone());
        equalizer(&id, &id)?
    } else {
        let overlaps = Arc::new(TernaryGammaModule::direct_sum(
            "overlaps",
            pairs.iter().map(|p| f.sections[p.2].clone()).collect(),
            element_budget,
        )?);
        let side = |left: bool| {
            ModuleMorphism::from_fn(if left { "left" } else { "right" }, product.clone(), overlaps.clone(), |x| {
                let c = product.components(x);
                let parts: Vec<usize> = pairs
                    .iter()
                    .map(|(a, b, _, ra, rb)| if left { ra.apply(c[*a]) } else { rb.apply(c[*b]) })
                    .collect();
                overlaps.encode(&parts)
            })
        };
        equalizer(&side(true)?, &side(false)?)?
    };
    Ok(CoverComparison {
        union,
        product,
        tuple,
        compatible,
        compatible_inclusion,
    })
}

/// Nonempty families of opens inside `u` whose union is `u`, as lists of
/// open indices, in increasing bitmask order over the opens inside `u`.
fn covers_of(space: &FiniteSpace, u: usize, limit: u64) -> (Vec<Vec<usize>>, u64) {
    let inside: Vec<usize> = (0..space.opens.len()).filter(|&o| space.is_subset(o, u)).collect();
    let total = 1u64.checked_shl(inside.len() as u32).unwrap_or(u64::MAX) - 1;
    let mut out = Vec::new();
    for mask in 1..=total.min(limit) {
        let family: Vec<usize> = (0..inside.len()).filter(|&k| mask >> k & 1 == 1).map(|k| inside[k]).collect();
        let mut union = Vec::new();
        for &o in &family {
            union = unite(&union, &space.opens[o]);
        }
        if union == space.opens[u] {
            out.push(family);
        }
    }
    (out, total)
}

fn cover_values(u: usize, cover: &[usize], tail: &[usize]) -> Vec<usize> {
    let mut v = vec![u, cover.len()];
    v.extend_from_slice(cover);
    v.extend_from_slice(tail);
    v
}

/// Topology, section modules, restrictions, functoriality on all composable
/// inclusions, and the sheaf condition on every cover of every open. Covers
/// beyond the search budget are not examined; the coverage is recorded.
pub fn check_sheaf(f: &TriadicSheaf, config: &WorkbenchConfig) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(&f.name, config.strict_zero);
    report.absorb("space", check_topology(&f.space));
    let space = &f.space;
    let mut bad_module = None;
    for (k, m) in f.sections.iter().enumerate() {
        if !check_module(m, config.strict_zero)?.passed() {
            bad_module = Some(Witness::new(vec![k], vec![space.open_label(k)]));
            break;
        }
    }
    report.push(Check::from_outcome("sections_are_modules", Tier::Structural, bad_module));
    let whole = space.index_of(&space.whole());
    let global_ok = match whole {
        Some(w) => check_module(&f.sections[w], config.strict_zero)?.passed(),
        None => false,
    };
    report.push(Check::from_outcome(
        "global_sections_module",
        Tier::Structural,
        (!global_ok).then(|| Witness::unlabeled(whole.into_iter().collect())),
    ));
    let incl = inclusions(space);
    let label2 = |b: usize, s: usize| vec![space.open_label(b), space.open_label(s)];
    report.push(Check::from_outcome(
        "restrictions_present",
        Tier::Structural,
        incl.iter()
            .find(|k| !f.restrictions.contains_key(k))
            .map(|&(b, s)| Witness::new(vec![b, s], label2(b, s))),
    ));
    report.push(Check::from_outcome(
        "restrictions_linear",
        Tier::Structural,
        f.restrictions
            .iter()
            .find(|(_, r)| !check_morphism(r).passed())
            .map(|(&(b, s), _)| Witness::new(vec![b, s], label2(b, s))),
    ));
    let mut square = None;
    'outer: for &(u, v) in &incl {
        for &(v2, w) in &incl {
            if v2 != v {
                continue;
            }
            let (Some(uv), Some(vw), Some(uw)) = (f.restriction(u, v), f.restriction(v, w), f.restriction(u, w)) else {
                continue;
            };
            if let Some(x) = (0..f.sections[u].size()).find(|&x| vw.apply(uv.apply(x)) != uw.apply(x)) {
                square = Some(Witness::new(
                    vec![u, v, w, x],
                    vec![space.open_label(u), space.open_label(v), space.open_label(w), f.sections[u].element_name(x)],
                ));
                break 'outer;
            }
        }
    }
    report.push(Check::from_outcome("functoriality", Tier::Axiom, square));
    let empty = space.index_of(&[]);
    report.push(Check::from_outcome(
        "empty_sections_trivial",
        Tier::Axiom,
        empty.filter(|&e| f.sections[e].size() != 1).map(|e| Witness::unlabeled(vec![e])),
    ));
    // the sheaf condition, per open and cover
    let mut budget = config.search_budget;
    let mut jobs = Vec::new();
    let mut total = 0u64;
    for u in 0..space.opens.len() {
        if space.opens[u].is_empty() {
            continue;
        }
        let (covers, all) = covers_of(space, u, budget);
        total = total.saturating_add(all);
        budget = budget.saturating_sub(all.min(budget));
        jobs.extend(covers.into_iter().map(|c| (u, c)));
    }
    let outcomes: Vec<Result<Option<Vec<usize>>>> = jobs
        .par_iter()
        .map(|(u, cover)| {
            let cmp = compare_cover(f, cover, config.element_budget)?;
            if let Some((x, y)) = cmp.injectivity_witness() {
                return Ok(Some(cover_values(*u, cover, &[0, x, y])));
            }
            Ok(cmp.gluing_witness().map(|e| cover_values(*u, cover, &[1, e])))
        })
        .collect();
    let mut failure = None;
    let mut skipped = 0usize;
    for o in outcomes {
        match o {
            Ok(Some(v)) if failure.is_none() => failure = Some(Witness::unlabeled(v)),
            Ok(_) => {}
            Err(Error::ElementBudget { .. }) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    report.push(Check::from_outcome("sheaf_condition", Tier::Axiom, failure));
    let examined = total.min(config.search_budget);
    if examined < total || skipped > 0 {
        report.push(Check::unavailable("sheaf_condition_coverage", Tier::Structural));
    }
    report.artifact(
        "coverage",
        serde_json::json!({
            "families_total": total,
            "families_examined": examined,
            "covers_checked": jobs.len() - skipped,
            "covers_over_element_budget": skipped,
        }),
    );
    Ok(report)
}

/// Replays a `check_sheaf` witness.
pub fn sheaf_violation(f: &TriadicSheaf, law: &str, v: &[usize], element_budget: usize) -> bool {
    let n = f.sections.len();
    match law {
        "functoriality" => match v {
            &[u, w1, w2, x] if u < n && w1 < n && w2 < n && x < f.sections[u].size() => {
                match (f.restriction(u, w1), f.restriction(w1, w2), f.restriction(u, w2)) {
                    (Some(a), Some(b), Some(c)) => b.apply(a.apply(x)) != c.apply(x),
                    _ => false,
                }
            }
            _ => false,
        },
        "sheaf_condition" => {
            let Some(&k) = v.get(1) else { return false };
            if v.len() < 3 + k || v[0] >= n {
                return false;
            }
            let cover = &v[2..2 + k];
            if cover.iter().any(|&c| c >= n) {
                return false;
            }
            let Ok(cmp) = compare_cover(f, cover, element_budget) else { return false };
            if cmp.union != v[0] {
                return false;
            }
            match &v[2 + k..] {
                &[0, x, y] => {
                    x != y && x < cmp.tuple.source().size() && y < cmp.tuple.source().size() && cmp.tuple.apply(x) == cmp.tuple.apply(y)
                }
                &[1, e] => cmp.compatible_inclusion.table().contains(&e) && !cmp.tuple.table().contains(&e),
                _ => false,
            }
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn two_points() -> FiniteSpace {
        FiniteSpace::discrete(vec!["p".into(), "q".into()])
    }

    #[test]
    fn functions_form_a_sheaf() {
        let f = TriadicSheaf::functions_into(two_points(), Arc::new(corpus::mz3()), 4096).unwrap();
        let r = check_sheaf(&f, &WorkbenchConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(f.sections[3].size(), 9);
    }

    #[test]
    fn constant_presheaf_on_one_open() {
        let one = FiniteSpace::new(vec!["p".into()], vec![vec![0]]).unwrap();
        let f = TriadicSheaf::constant_presheaf(one, Arc::new(corpus::mb1())).unwrap();
        let r = check_sheaf(&f, &WorkbenchConfig::default()).unwrap();
        // the one-open space has no empty open, so this is not a topology
        assert!(r.check("functoriality").unwrap().passed());
        assert!(r.check("sheaf_condition").unwrap().passed());
        let indiscrete = FiniteSpace::new(vec!["p".into()], vec![vec![], vec![0]]).unwrap();
        let mut g = TriadicSheaf::functions_into(indiscrete, Arc::new(corpus::mb1()), 64).unwrap();
        g.name = "point".into();
        assert!(check_sheaf(&g, &WorkbenchConfig::default()).unwrap().passed());
    }

    #[test]
    fn constant_presheaf_on_two_points_fails_gluing() {
        let f = TriadicSheaf::constant_presheaf(two_points(), Arc::new(corpus::mz3())).unwrap();
        let r = check_sheaf(&f, &WorkbenchConfig::default()).unwrap();
        assert!(r.check("empty_sections_trivial").unwrap().passed());
        assert!(r.check("functoriality").unwrap().passed());
        let c = r.check("sheaf_condition").unwrap();
        assert!(!c.passed());
        let w = c.witness.as_ref().unwrap();
        assert!(sheaf_violation(&f, "sheaf_condition", &w.values, 4096));
    }

    #[test]
    fn broken_square_is_caught_and_replays() {
        let three = FiniteSpace::discrete(vec!["p".into(), "q".into(), "r".into()]);
        let mut f = TriadicSheaf::functions_into(three, Arc::new(corpus::mz3()), 4096).unwrap();
        // restricting the whole space to {p,q} swaps the two coordinates
        let whole = f.space.index_of(&[0, 1, 2]).unwrap();
        let pq = f.space.index_of(&[0, 1]).unwrap();
        let src = f.sections[whole].clone();
        let dst = f.sections[pq].clone();
        let wrong = ModuleMorphism::from_fn("wrong", src.clone(), dst.clone(), |x| {
            let c = src.components(x);
            dst.encode(&[c[1], c[0]])
        })
        .unwrap();
        f.restrictions.insert((whole, pq), wrong);
        let r = check_sheaf(&f, &WorkbenchConfig::default()).unwrap();
        let c = r.check("functoriality").unwrap();
        assert!(!c.passed());
        let w = c.witness.as_ref().unwrap();
        assert!(sheaf_violation(&f, "functoriality", &w.values, 4096));
    }
}
