use std::sync::Arc;

use super::object::{SimplicialModule, SimplicialMorphism};
use crate::algebra::{constrained_morphism_tables, is_linear_table};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::{Error, Result};

/// Face `d_i` on the 1-simplices of Δ[1] at level `n`, indexed by the
/// number `j` of vertices sent to 0.
pub(crate) fn interval_face(i: usize, j: usize) -> usize {
    if i < j {
        j - 1
    } else {
        j
    }
}

/// Degeneracy `s_i` on the same indexing.
pub(crate) fn interval_degeneracy(i: usize, j: usize) -> usize {
    if i < j {
        j + 1
    } else {
        j
    }
}

/// A simplicial homotopy `X ⊗ Δ[1] → Y`: `tables[n][j]: X_n → Y_n` is the
/// component on the `n`-simplex of Δ[1] with `j` vertices at 0, so
/// `tables[n][n+1]` is the map at the 0-end and `tables[n][0]` the map at
/// the 1-end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub tables: Vec<Vec<Vec<usize>>>,
}

impl Homotopy {
    /// The constant homotopy on `f`.
    pub fn constant(f: &SimplicialMorphism) -> Self {
        Homotopy {
            tables: f
                .levels
                .iter()
                .enumerate()
                .map(|(n, l)| vec![l.table().to_vec(); n + 2])
                .collect(),
        }
    }
}

/// Checks that `h` is a simplicial homotopy from `f` (0-end) to `g`
/// (1-end): linear components, correct ends, commutation with faces and
/// degeneracies. Witnesses are `[kind, n, j, i, x]`.
pub fn check_homotopy(
    h: &Homotopy,
    f: &SimplicialMorphism,
    g: &SimplicialMorphism,
) -> AxiomReport {
    let (x, y) = (&f.source, &f.target);
    let top = x.truncation();
    let mut report = AxiomReport::new(format!("{} ~ {}", f.name, g.name), true);
    let shape_ok = h.tables.len() == top + 1
        && h.tables.iter().enumerate().all(|(n, row)| {
            row.len() == n + 2 && row.iter().all(|t| t.len() == x.level(n).size())
        });
    if !shape_ok {
        report.push(Check::fail("shape", Tier::Structural, Witness::unlabeled(vec![])));
        return report;
    }
    let bad_end = (0..=top).find(|&n| {
        h.tables[n][n + 1] != f.level(n).table() || h.tables[n][0] != g.level(n).table()
    });
    report.push(Check::from_outcome(
        "ends",
        Tier::Structural,
        bad_end.map(|n| Witness::unlabeled(vec![n])),
    ));
    let bad_linear = (0..=top).find_map(|n| {
        (0..n + 2)
            .find(|&j| !is_linear_table(x.level(n), y.level(n), &h.tables[n][j]))
            .map(|j| vec![n, j])
    });
    report.push(Check::from_outcome(
        "components_linear",
        Tier::Structural,
        bad_linear.map(Witness::unlabeled),
    ));
    let mut face_hit = None;
    let mut degen_hit = None;
    'outer: for n in 0..=top {
        for j in 0..n + 2 {
            for e in 0..x.level(n).size() {
                let v = h.tables[n][j][e];
                if n >= 1 && face_hit.is_none() {
                    for i in 0..=n {
                        let lhs = y.face(n, i).apply(v);
                        let rhs = h.tables[n - 1][interval_face(i, j)][x.face(n, i).apply(e)];
                        if lhs != rhs {
                            face_hit = Some(vec![0, n, j, i, e]);
                        }
                    }
                }
                if n < top && degen_hit.is_none() {
                    for i in 0..=n {
                        let lhs = y.degeneracy(n, i).apply(v);
                        let rhs = h.tables[n + 1][interval_degeneracy(i, j)][x.degeneracy(n, i).apply(e)];
                        if lhs != rhs {
                            degen_hit = Some(vec![1, n, j, i, e]);
                        }
                    }
                }
                if face_hit.is_some() && degen_hit.is_some() {
                    break 'outer;
                }
            }
        }
    }
    report.push(Check::from_outcome("commutes_faces", Tier::Structural, face_hit.map(Witness::unlabeled)));
    report.push(Check::from_outcome(
        "commutes_degeneracies",
        Tier::Structural,
        degen_hit.map(Witness::unlabeled),
    ));
    report
}

/// Which end carries which map in a found homotopy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `f` at the 0-end, `g` at the 1-end.
    Forward,
    /// `g` at the 0-end, `f` at the 1-end.
    Backward,
}

#[derive(Clone, Debug)]
pub enum HomotopySearch {
    Found {
        homotopy: Homotopy,
        orientation: Orientation,
    },
    /// No homotopy exists within the truncation (`exhaustive`), or the
    /// budget ran out first.
    NotFound { exhaustive: bool },
}

impl HomotopySearch {
    pub fn is_found(&self) -> bool {
        matches!(self, HomotopySearch::Found { .. })
    }
}

/// Searches for a simplicial homotopy between `f` and `g` in either
/// direction. Interior components are filled level by level with
/// linear maps constrained by the faces and degeneracies already fixed.
pub fn find_simplicial_homotopy(
    f: &SimplicialMorphism,
    g: &SimplicialMorphism,
    budget: u64,
) -> Result<HomotopySearch> {
    if f.source.truncation() != g.source.truncation()
        || f.levels.iter().zip(&g.levels).any(|(a, b)| {
            a.source().size() != b.source().size() || a.target().size() != b.target().size()
        })
    {
        return Err(Error::Precondition(format!(
            "{} and {} do not share source and target",
            f.name, g.name
        )));
    }
    if f.tables_equal(g) {
        return Ok(HomotopySearch::Found {
            homotopy: Homotopy::constant(f),
            orientation: Orientation::Forward,
        });
    }
    let mut exhaustive = true;
    for (orientation, a, b) in [(Orientation::Forward, f, g), (Orientation::Backward, g, f)] {
        let mut left = budget;
        match search(a, b, &mut left) {
            Some(Some(homotopy)) => return Ok(HomotopySearch::Found { homotopy, orientation }),
            Some(None) => {}
            None => exhaustive = false,
        }
    }
    Ok(HomotopySearch::NotFound { exhaustive })
}

/// `Some(Some(h))` found, `Some(None)` none exists, `None` out of budget.
fn search(f: &SimplicialMorphism, g: &SimplicialMorphism, budget: &mut u64) -> Option<Option<Homotopy>> {
    let top = f.source.truncation();
    let mut tables: Vec<Vec<Vec<usize>>> = vec![vec![g.level(0).table().to_vec(), f.level(0).table().to_vec()]];
    match descend(f, g, 1, top, &mut tables, budget)? {
        true => Some(Some(Homotopy { tables })),
        false => Some(None),
    }
}

fn descend(
    f: &SimplicialMorphism,
    g: &SimplicialMorphism,
    n: usize,
    top: usize,
    tables: &mut Vec<Vec<Vec<usize>>>,
    budget: &mut u64,
) -> Option<bool> {
    if n > top {
        return Some(true);
    }
    let (x, y) = (&f.source, &f.target);
    let mut options: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for j in 1..=n {
        let allowed = |e: usize, v: usize| interior_allowed(x, y, &tables[n - 1], n, j, e, v);
        let found = constrained_morphism_tables(x.level(n), y.level(n), &allowed, budget)?;
        if found.is_empty() {
            return Some(false);
        }
        options.push(found);
    }
    // cartesian product over the interior components
    let mut pick = vec![0usize; n];
    loop {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut row = Vec::with_capacity(n + 2);
        row.push(g.level(n).table().to_vec());
        for (j, o) in options.iter().enumerate() {
            row.push(o[pick[j]].clone());
        }
        row.push(f.level(n).table().to_vec());
        tables.push(row);
        if descend(f, g, n + 1, top, tables, budget)? {
            return Some(true);
        }
        tables.pop();
        let mut k = 0;
        loop {
            if k == n {
                return Some(false);
            }
            pick[k] += 1;
            if pick[k] < options[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Constraints on the value `v` of the interior component `j` at `e ∈ X_n`
/// coming from level `n-1`.
fn interior_allowed(
    x: &SimplicialModule,
    y: &SimplicialModule,
    below: &[Vec<usize>],
    n: usize,
    j: usize,
    e: usize,
    v: usize,
) -> bool {
    for i in 0..=n {
        if y.face(n, i).apply(v) != below[interval_face(i, j)][x.face(n, i).apply(e)] {
            return false;
        }
    }
    // e = s_i e' forces v = s_i h(e') whenever s_i hits the simplex j
    for i in 0..n {
        if i + 1 == j {
            continue;
        }
        let tau = if i < j { j - 1 } else { j };
        let e_prime = x.face(n, i).apply(e);
        if x.degeneracy(n - 1, i).apply(e_prime) == e
            && y.degeneracy(n - 1, i).apply(below[tau][e_prime]) != v
        {
            return false;
        }
    }
    true
}

/// Homotopy from the tables of a morphism `X ⊗ Δ[1] → Y`, for callers that
/// build one explicitly.
pub fn homotopy_from_components(tables: Vec<Vec<Vec<usize>>>) -> Homotopy {
    Homotopy { tables }
}

/// Convenience for tests and reports: both ends of `h` as morphisms.
pub fn homotopy_ends(h: &Homotopy, x: &Arc<SimplicialModule>, y: &Arc<SimplicialModule>) -> Result<(SimplicialMorphism, SimplicialMorphism)> {
    let zero_end = h.tables.iter().enumerate().map(|(n, r)| r[n + 1].clone()).collect();
    let one_end = h.tables.iter().map(|r| r[0].clone()).collect();
    Ok((
        SimplicialMorphism::from_tables("h0", x.clone(), y.clone(), zero_end)?,
        SimplicialMorphism::from_tables("h1", x.clone(), y.clone(), one_end)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::simplicial::{homology, induced_map};

    #[test]
    fn interval_operators_match_the_nerve() {
        use crate::simplicial::FiniteSimplicialSet;
        let d1 = FiniteSimplicialSet::delta(1, 3);
        // lexicographic index of the simplex with j zeros is n + 1 - j
        for n in 1..=3 {
            for j in 0..n + 2 {
                for i in 0..=n {
                    assert_eq!(d1.faces[n][i][n + 1 - j], n - interval_face(i, j));
                }
            }
        }
        for n in 0..3 {
            for j in 0..n + 2 {
                for i in 0..=n {
                    assert_eq!(d1.degeneracies[n][i][n + 1 - j], n + 2 - interval_degeneracy(i, j));
                }
            }
        }
    }

    #[test]
    fn constant_homotopy_checks() {
        let x = Arc::new(SimplicialModule::constant(Arc::new(corpus::mb1()), 3));
        let id = SimplicialMorphism::identity(x);
        let h = find_simplicial_homotopy(&id, &id, 1000).unwrap();
        let HomotopySearch::Found { homotopy, .. } = h else { panic!() };
        assert!(check_homotopy(&homotopy, &id, &id).passed());
    }

    #[test]
    fn identity_and_zero_on_constant_are_not_homotopic() {
        let x = Arc::new(SimplicialModule::constant(Arc::new(corpus::mb1()), 3));
        let id = SimplicialMorphism::identity(x.clone());
        let zero = SimplicialMorphism::zero(x.clone(), x.clone()).unwrap();
        let h = find_simplicial_homotopy(&id, &zero, 1 << 16).unwrap();
        assert!(matches!(h, HomotopySearch::NotFound { exhaustive: true }));
        // homology tells them apart
        let hx = homology(&x, true).unwrap();
        assert_ne!(
            induced_map(&id, &hx, &hx, 0).unwrap().table(),
            induced_map(&zero, &hx, &hx, 0).unwrap().table()
        );
    }

    #[test]
    fn broken_homotopy_fails_the_check() {
        let x = Arc::new(SimplicialModule::constant(Arc::new(corpus::mb1()), 2));
        let id = SimplicialMorphism::identity(x.clone());
        let mut h = Homotopy::constant(&id);
        h.tables[1][1] = vec![0, 0];
        let r = check_homotopy(&h, &id, &id);
        assert!(!r.passed());
        assert!(r.check("ends").unwrap().passed());
    }
}
