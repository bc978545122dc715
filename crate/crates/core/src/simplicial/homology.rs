use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::object::{check_simplicial_morphism, SimplicialModule, SimplicialMorphism};
use crate::algebra::{submodule, ModuleMorphism, TernaryGammaModule};
use crate::exactness::{quotient, Congruence};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::{Error, Result};

/// One term of the normalized complex, kept as a submodule of `X_n`
/// together with the reverse index.
#[derive(Clone, Debug)]
pub struct MooreTerm {
    pub module: Arc<TernaryGammaModule>,
    /// Element of `X_n` behind each element of the term.
    pub members: Vec<usize>,
    index_of: HashMap<usize, usize>,
}

impl MooreTerm {
    fn new(module: Arc<TernaryGammaModule>, members: Vec<usize>) -> Self {
        let index_of = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        MooreTerm {
            module,
            members,
            index_of,
        }
    }

    /// Position of an element of the ambient level, if it belongs here.
    pub fn index(&self, x: usize) -> Option<usize> {
        self.index_of.get(&x).copied()
    }
}

/// `N_n = ⋂_{i ≥ 1} d_i^{-1}(0)` with boundary the restriction of `d_0`.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    pub terms: Vec<MooreTerm>,
    /// `boundaries[n]: N_n → N_{n-1}`; empty in degree 0.
    pub boundaries: Vec<Option<ModuleMorphism>>,
}

/// Normalized chains of `x`. Refuses to run without zero-absorption, which
/// is what makes the preimages of zero submodules.
pub fn moore_complex(x: &SimplicialModule, strict_zero: bool) -> Result<MooreComplex> {
    if !strict_zero {
        return Err(Error::Precondition(
            "the normalized complex needs zero-absorption (strict mode)".into(),
        ));
    }
    let mut terms = Vec::with_capacity(x.truncation() + 1);
    for n in 0..=x.truncation() {
        let level = x.level(n);
        let members: Vec<usize> = (0..level.size())
            .filter(|&e| (1..=n).all(|i| x.face(n, i).apply(e) == x.face(n, i).target().zero()))
            .collect();
        let sub = Arc::new(submodule(format!("N{n}({})", x.name()), level, &members)?);
        terms.push(MooreTerm::new(sub, members));
    }
    let mut boundaries = vec![None];
    for n in 1..=x.truncation() {
        let d0 = x.face(n, 0);
        let mut table = Vec::with_capacity(terms[n].members.len());
        for &e in &terms[n].members {
            let y = d0.apply(e);
            let j = terms[n - 1].index(y).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "d0 of {} leaves the normalized chains in degree {}",
                    x.level(n).element_name(e),
                    n - 1
                ))
            })?;
            table.push(j);
        }
        boundaries.push(Some(ModuleMorphism::new(
            format!("del{n}"),
            terms[n].module.clone(),
            terms[n - 1].module.clone(),
            table,
        )?));
    }
    Ok(MooreComplex { terms, boundaries })
}

/// `H_n = Z_n / ~` where `~` identifies boundaries with zero.
#[derive(Clone, Debug)]
pub struct HomologyModule {
    pub degree: usize,
    /// Cycles as a submodule of `N_n` and their elements in `X_n`.
    pub cycles: Arc<TernaryGammaModule>,
    pub cycle_members: Vec<usize>,
    /// Boundaries, as indices into `cycles`.
    pub boundaries: Vec<usize>,
    pub congruence: Congruence,
    pub module: Arc<TernaryGammaModule>,
    pub projection: ModuleMorphism,
    /// False at the truncation edge, where boundaries from above are not
    /// available.
    pub reliable: bool,
}

impl HomologyModule {
    pub fn size(&self) -> usize {
        self.module.size()
    }

    pub fn is_zero(&self) -> bool {
        self.module.size() == 1
    }
}

/// All homology modules of `x`, degrees `0..=N`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub complex: MooreComplex,
    pub degrees: Vec<HomologyModule>,
    cycle_index: Vec<HashMap<usize, usize>>,
}

impl Homology {
    /// Class of an element of `X_n`, if it is a normalized cycle.
    pub fn class_of(&self, n: usize, e: usize) -> Option<usize> {
        self.cycle_index[n]
            .get(&e)
            .map(|&z| self.degrees[n].projection.apply(z))
    }

    /// An element of `X_n` representing each class.
    pub fn representatives(&self, n: usize) -> Vec<usize> {
        let h = &self.degrees[n];
        let mut reps = vec![usize::MAX; h.size()];
        for (z, &e) in h.cycle_members.iter().enumerate() {
            let c = h.projection.apply(z);
            if reps[c] == usize::MAX {
                reps[c] = e;
            }
        }
        reps
    }

    pub fn reliable_degrees(&self) -> usize {
        self.degrees.iter().filter(|h| h.reliable).count()
    }
}

/// Moore homology in every degree up to the truncation; the top degree is
/// computed but flagged unreliable.
pub fn homology(x: &SimplicialModule, strict_zero: bool) -> Result<Homology> {
    let complex = moore_complex(x, strict_zero)?;
    let top = x.truncation();
    let mut degrees = Vec::with_capacity(top + 1);
    let mut cycle_index = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let term = &complex.terms[n];
        let cycle_pos: Vec<usize> = match &complex.boundaries[n] {
            None => (0..term.members.len()).collect(),
            Some(d) => d.zero_fiber(),
        };
        let cycles = Arc::new(submodule(
            format!("Z{n}({})", x.name()),
            &term.module,
            &cycle_pos,
        )?);
        let cycle_members: Vec<usize> = cycle_pos.iter().map(|&p| term.members[p]).collect();
        let index: HashMap<usize, usize> = cycle_members.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let boundaries: Vec<usize> = if n < top {
            let d = complex.boundaries[n + 1].as_ref().expect("boundary above");
            let above = &complex.terms[n + 1];
            let mut b: Vec<usize> = (0..above.members.len())
                .map(|p| {
                    let e = term.members[d.apply(p)];
                    index.get(&e).copied().ok_or_else(|| {
                        Error::Inconsistent(format!("boundary in degree {n} is not a cycle"))
                    })
                })
                .collect::<Result<_>>()?;
            b.sort_unstable();
            b.dedup();
            b
        } else {
            vec![cycles.zero()]
        };
        let congruence = boundary_congruence(&cycles, &boundaries)?;
        let (module, projection) = quotient(&congruence)?;
        let module = Arc::new(module.as_ref().clone().renamed(format!("H{n}({})", x.name())));
        let projection = ModuleMorphism::new(
            format!("q{n}"),
            cycles.clone(),
            module.clone(),
            projection.table().to_vec(),
        )?;
        degrees.push(HomologyModule {
            degree: n,
            cycles,
            cycle_members,
            boundaries,
            congruence,
            module,
            projection,
            reliable: n < top,
        });
        cycle_index.push(index);
    }
    Ok(Homology {
        complex,
        degrees,
        cycle_index,
    })
}

/// Congruence generated by `b ~ 0` for `b` in the boundary submodule.
/// Since the boundaries form a submodule it is `z ~ z + b`, which is
/// already closed under the operations.
fn boundary_congruence(cycles: &Arc<TernaryGammaModule>, boundaries: &[usize]) -> Result<Congruence> {
    let mut uf = UnionFind::<usize>::new(cycles.size());
    for z in 0..cycles.size() {
        for &b in boundaries {
            uf.union(z, cycles.add(z, b));
        }
    }
    let labels: Vec<usize> = (0..cycles.size()).map(|z| uf.find(z)).collect();
    Congruence::from_labels(cycles.clone(), &labels)
}

/// The map `H_n(X) → H_n(Y)` induced by `f`, checked to be well defined on
/// every cycle.
pub fn induced_map(
    f: &SimplicialMorphism,
    hx: &Homology,
    hy: &Homology,
    n: usize,
) -> Result<ModuleMorphism> {
    let src = &hx.degrees[n];
    let mut table = vec![usize::MAX; src.size()];
    for (z, &e) in src.cycle_members.iter().enumerate() {
        let c = src.projection.apply(z);
        let image = f.level(n).apply(e);
        let d = hy.class_of(n, image).ok_or_else(|| {
            Error::Inconsistent(format!("{} sends a cycle in degree {n} outside the cycles", f.name))
        })?;
        if table[c] != usize::MAX && table[c] != d {
            return Err(Error::Inconsistent(format!(
                "{} is not well defined on homology in degree {n}",
                f.name
            )));
        }
        table[c] = d;
    }
    ModuleMorphism::new(
        format!("H{n}({})", f.name),
        src.module.clone(),
        hy.degrees[n].module.clone(),
        table,
    )
}

/// Outcome of comparing homology along a morphism.
#[derive(Clone, Debug)]
pub struct WeakEquivalence {
    pub holds: bool,
    pub report: AxiomReport,
    pub induced: Vec<ModuleMorphism>,
}

/// Bijectivity of the induced maps in every reliable degree. Injectivity
/// and surjectivity are recorded separately; the edge degree is reported
/// but does not count.
pub fn is_weak_equivalence(f: &SimplicialMorphism, strict_zero: bool) -> Result<WeakEquivalence> {
    let simplicial = check_simplicial_morphism(f);
    if !simplicial.passed() {
        let c = simplicial.failures().next().expect("failure");
        return Err(Error::Precondition(format!(
            "{} is not simplicial ({} fails at {:?})",
            f.name,
            c.name,
            c.witness.as_ref().map(|w| w.labels.clone()).unwrap_or_default()
        )));
    }
    let hx = homology(&f.source, strict_zero)?;
    let hy = homology(&f.target, strict_zero)?;
    weak_equivalence_from(f, &hx, &hy)
}

pub(crate) fn weak_equivalence_from(
    f: &SimplicialMorphism,
    hx: &Homology,
    hy: &Homology,
) -> Result<WeakEquivalence> {
    let mut report = AxiomReport::new(&f.name, true);
    let mut induced = Vec::new();
    let mut holds = true;
    for n in 0..hx.degrees.len() {
        let map = induced_map(f, hx, hy, n)?;
        let reliable = hx.degrees[n].reliable;
        let tier = if reliable { Tier::Axiom } else { Tier::Weak };
        let not_injective = first_collision(map.table()).map(|(a, b)| Witness::unlabeled(vec![n, a, b]));
        let not_surjective = (0..map.target().size())
            .find(|y| !map.table().contains(y))
            .map(|y| Witness::unlabeled(vec![n, y]));
        if reliable {
            holds &= not_injective.is_none() && not_surjective.is_none();
            report.push(Check::from_outcome(format!("h{n}_injective"), tier, not_injective));
            report.push(Check::from_outcome(format!("h{n}_surjective"), tier, not_surjective));
        } else {
            let bij = not_injective.is_none() && not_surjective.is_none();
            report.artifact(format!("h{n}_edge_bijective"), bij);
        }
        induced.push(map);
    }
    report.artifact("reliable_degrees", hx.reliable_degrees());
    Ok(WeakEquivalence {
        holds,
        report,
        induced,
    })
}

fn first_collision(table: &[usize]) -> Option<(usize, usize)> {
    for a in 0..table.len() {
        for b in a + 1..table.len() {
            if table[a] == table[b] {
                return Some((a, b));
            }
        }
    }
    None
}
