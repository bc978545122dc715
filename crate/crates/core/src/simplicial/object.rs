use std::sync::Arc;

use rayon::prelude::*;

use super::sset::FiniteSimplicialSet;
use crate::algebra::{check_morphism, ModuleMorphism, TernaryGammaModule, TernaryGammaSemiring};
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::{Error, Result};

/// A simplicial ternary Γ-module truncated at level `N`: modules
/// `X_0..X_N`, faces `d_i: X_n → X_{n-1}` and degeneracies
/// `s_i: X_n → X_{n+1}` as Γ-linear tables.
#[derive(Clone, Debug)]
pub struct SimplicialModule {
    name: String,
    levels: Vec<Arc<TernaryGammaModule>>,
    faces: Vec<Vec<ModuleMorphism>>,
    degeneracies: Vec<Vec<ModuleMorphism>>,
}

impl SimplicialModule {
    /// Validates shapes; the simplicial identities are checked by
    /// [`check_simplicial`].
    pub fn new(
        name: impl Into<String>,
        levels: Vec<Arc<TernaryGammaModule>>,
        faces: Vec<Vec<ModuleMorphism>>,
        degeneracies: Vec<Vec<ModuleMorphism>>,
    ) -> Result<Self> {
        let name = name.into();
        if levels.is_empty() {
            return Err(Error::malformed(format!("simplicial {name}"), "no levels"));
        }
        let top = levels.len() - 1;
        if faces.len() != top + 1 || degeneracies.len() != top + 1 {
            return Err(Error::SizeMismatch {
                what: format!("map families of {name}"),
                expected: top + 1,
                actual: faces.len().min(degeneracies.len()),
            });
        }
        for n in 0..=top {
            let want_faces = if n == 0 { 0 } else { n + 1 };
            let want_degens = if n < top { n + 1 } else { 0 };
            if faces[n].len() != want_faces {
                return Err(Error::SizeMismatch {
                    what: format!("faces of level {n} of {name}"),
                    expected: want_faces,
                    actual: faces[n].len(),
                });
            }
            if degeneracies[n].len() != want_degens {
                return Err(Error::SizeMismatch {
                    what: format!("degeneracies of level {n} of {name}"),
                    expected: want_degens,
                    actual: degeneracies[n].len(),
                });
            }
            for (i, d) in faces[n].iter().enumerate() {
                check_shape(&name, "d", n, i, d, &levels[n], &levels[n - 1])?;
            }
            for (i, s) in degeneracies[n].iter().enumerate() {
                check_shape(&name, "s", n, i, s, &levels[n], &levels[n + 1])?;
            }
        }
        Ok(SimplicialModule {
            name,
            levels,
            faces,
            degeneracies,
        })
    }

    /// The same tables over levels whose parameter indices are relabeled by
    /// `gamma_map`. Levels shared by pointer stay shared.
    pub fn relabel_gammas(&self, gamma_map: &[usize]) -> Result<Self> {
        let mut seen: Vec<(*const TernaryGammaModule, Arc<TernaryGammaModule>)> = Vec::new();
        let levels = self
            .levels
            .iter()
            .map(|m| {
                if let Some((_, r)) = seen.iter().find(|(p, _)| std::ptr::eq(*p, Arc::as_ptr(m))) {
                    return r.clone();
                }
                let r = Arc::new(m.relabel_gammas(gamma_map));
                seen.push((Arc::as_ptr(m), r.clone()));
                r
            })
            .collect();
        let table = |maps: &Vec<Vec<ModuleMorphism>>| -> Vec<Vec<Vec<usize>>> {
            maps.iter().map(|row| row.iter().map(|f| f.table().to_vec()).collect()).collect()
        };
        Self::from_tables(self.name.clone(), levels, table(&self.faces), table(&self.degeneracies))
    }

    /// Builds faces and degeneracies from raw tables.
    pub fn from_tables(
        name: impl Into<String>,
        levels: Vec<Arc<TernaryGammaModule>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let name = name.into();
        let top = levels.len().saturating_sub(1);
        let mut fm = Vec::with_capacity(faces.len());
        for (n, row) in faces.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (i, t) in row.into_iter().enumerate() {
                if n == 0 || n > top {
                    return Err(Error::malformed(format!("simplicial {name}"), format!("face d{n}.{i} has no target level")));
                }
                out.push(ModuleMorphism::new(format!("d{n}.{i}"), levels[n].clone(), levels[n - 1].clone(), t)?);
            }
            fm.push(out);
        }
        let mut dm = Vec::with_capacity(degeneracies.len());
        for (n, row) in degeneracies.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (i, t) in row.into_iter().enumerate() {
                if n >= top {
                    return Err(Error::malformed(format!("simplicial {name}"), format!("degeneracy s{n}.{i} has no target level")));
                }
                out.push(ModuleMorphism::new(format!("s{n}.{i}"), levels[n].clone(), levels[n + 1].clone(), t)?);
            }
            dm.push(out);
        }
        Self::new(name, levels, fm, dm)
    }

    /// The constant object: every level `m`, every map the identity.
    pub fn constant(m: Arc<TernaryGammaModule>, truncation: usize) -> Self {
        let levels = vec![m.clone(); truncation + 1];
        let id: Vec<usize> = (0..m.size()).collect();
        let faces = (0..=truncation)
            .map(|n| vec![id.clone(); if n == 0 { 0 } else { n + 1 }])
            .collect();
        let degens = (0..=truncation)
            .map(|n| vec![id.clone(); if n < truncation { n + 1 } else { 0 }])
            .collect();
        Self::from_tables(format!("c({})", m.name()), levels, faces, degens).expect("constant")
    }

    /// The zero object.
    pub fn zero(semiring: Arc<TernaryGammaSemiring>, truncation: usize) -> Self {
        let z = Arc::new(TernaryGammaModule::zero_module(semiring));
        Self::constant(z, truncation).renamed("0")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Arc<TernaryGammaModule> {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Arc<TernaryGammaModule>] {
        &self.levels
    }

    pub fn face(&self, n: usize, i: usize) -> &ModuleMorphism {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &ModuleMorphism {
        &self.degeneracies[n][i]
    }

    pub fn semiring(&self) -> &Arc<TernaryGammaSemiring> {
        self.levels[0].semiring()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.size() == 1)
    }

    /// Copy with one face table replaced.
    pub fn with_face(&self, n: usize, i: usize, table: Vec<usize>) -> Result<Self> {
        let mut faces = self.faces.clone();
        faces[n][i] = ModuleMorphism::new(
            format!("d{n}.{i}"),
            self.levels[n].clone(),
            self.levels[n - 1].clone(),
            table,
        )?;
        Self::new(self.name.clone(), self.levels.clone(), faces, self.degeneracies.clone())
    }

    /// Applies the simplicial operator of a nondecreasing map
    /// `a: [m] → [n]` to `x ∈ X_n`, through its epi-mono factorization.
    pub fn operator(&self, n: usize, a: &[usize], x: usize) -> usize {
        let mut y = x;
        let mut image: Vec<usize> = a.to_vec();
        image.dedup();
        let mut level = n;
        for i in (0..=n).rev() {
            if !image.contains(&i) {
                y = self.faces[level][i].apply(y);
                level -= 1;
            }
        }
        for p in 0..a.len().saturating_sub(1) {
            if a[p] == a[p + 1] {
                y = self.degeneracies[level][p].apply(y);
                level += 1;
            }
        }
        y
    }

    /// Every face and degeneracy with its kind, level and index.
    pub(crate) fn all_maps(&self) -> Vec<(usize, usize, usize, &ModuleMorphism)> {
        let mut out = Vec::new();
        for (n, row) in self.faces.iter().enumerate() {
            for (i, d) in row.iter().enumerate() {
                out.push((0, n, i, d));
            }
        }
        for (n, row) in self.degeneracies.iter().enumerate() {
            for (i, s) in row.iter().enumerate() {
                out.push((1, n, i, s));
            }
        }
        out
    }
}

fn check_shape(
    name: &str,
    kind: &str,
    n: usize,
    i: usize,
    f: &ModuleMorphism,
    src: &TernaryGammaModule,
    dst: &TernaryGammaModule,
) -> Result<()> {
    if f.source().size() != src.size() || f.target().size() != dst.size() {
        return Err(Error::SizeMismatch {
            what: format!("{kind}{n}.{i} of {name} (level sizes)"),
            expected: src.size(),
            actual: f.source().size(),
        });
    }
    Ok(())
}

/// Verifies linearity of every structure map and the simplicial identities
/// wherever both sides exist within the truncation.
pub fn check_simplicial(x: &SimplicialModule) -> AxiomReport {
    let mut report = AxiomReport::new(x.name(), true);
    let bad_map = x
        .all_maps()
        .into_iter()
        .find(|(_, _, _, f)| !check_morphism(f).passed())
        .map(|(k, n, i, _)| vec![k, n, i]);
    report.push(Check::from_outcome(
        "maps_linear",
        Tier::Axiom,
        bad_map.map(|v| {
            let labels = vec![if v[0] == 0 { "d" } else { "s" }.to_string(), v[1].to_string(), v[2].to_string()];
            Witness::new(v, labels)
        }),
    ));
    for law in ["face_face", "degeneracy_degeneracy", "face_degeneracy"] {
        let hit = identity_instances(x, law)
            .into_par_iter()
            .find_first(|v| simplicial_violation(x, law, v));
        report.push(Check::from_outcome(
            law,
            Tier::Axiom,
            hit.map(|v| {
                let mut labels: Vec<String> = v[..3].iter().map(|a| a.to_string()).collect();
                labels.push(x.level(v[0]).element_name(v[3]));
                Witness::new(v, labels)
            }),
        ));
    }
    report
}

/// Tuples `[n, i, j, x]` at which an identity can be stated.
fn identity_instances(x: &SimplicialModule, law: &str) -> Vec<Vec<usize>> {
    let top = x.truncation();
    let mut out = Vec::new();
    for n in 0..=top {
        let size = x.level(n).size();
        let (ok, range_i, range_j): (bool, usize, usize) = match law {
            "face_face" => (n >= 2, n + 1, n + 1),
            "degeneracy_degeneracy" => (n + 2 <= top, n + 1, n + 1),
            _ => (n < top, n + 2, n + 1),
        };
        if !ok {
            continue;
        }
        for i in 0..range_i {
            for j in 0..range_j {
                let relevant = match law {
                    "face_face" => i < j,
                    "degeneracy_degeneracy" => i <= j,
                    _ => true,
                };
                if !relevant {
                    continue;
                }
                for e in 0..size {
                    out.push(vec![n, i, j, e]);
                }
            }
        }
    }
    out
}

/// Re-evaluates a simplicial identity at `[n, i, j, x]`; `true` means
/// violated. For `maps_linear` the witness is `[kind, n, i]`.
pub fn simplicial_violation(x: &SimplicialModule, law: &str, v: &[usize]) -> bool {
    let d = |n: usize, i: usize, e: usize| x.face(n, i).apply(e);
    let s = |n: usize, i: usize, e: usize| x.degeneracy(n, i).apply(e);
    match (law, v) {
        ("maps_linear", &[k, n, i]) => {
            let f = if k == 0 { x.face(n, i) } else { x.degeneracy(n, i) };
            !check_morphism(f).passed()
        }
        // d_i d_j = d_{j-1} d_i for i < j, on X_n
        ("face_face", &[n, i, j, e]) => i < j && d(n - 1, i, d(n, j, e)) != d(n - 1, j - 1, d(n, i, e)),
        // s_i s_j = s_{j+1} s_i for i <= j, on X_n
        ("degeneracy_degeneracy", &[n, i, j, e]) => {
            i <= j && s(n + 1, i, s(n, j, e)) != s(n + 1, j + 1, s(n, i, e))
        }
        // d_i s_j on X_n
        ("face_degeneracy", &[n, i, j, e]) => {
            let lhs = d(n + 1, i, s(n, j, e));
            let rhs = if i < j {
                s(n - 1, j - 1, d(n, i, e))
            } else if i == j || i == j + 1 {
                e
            } else {
                s(n - 1, j, d(n, i - 1, e))
            };
            lhs != rhs
        }
        _ => false,
    }
}

/// A level-wise map of simplicial modules.
#[derive(Clone, Debug)]
pub struct SimplicialMorphism {
    pub name: String,
    pub source: Arc<SimplicialModule>,
    pub target: Arc<SimplicialModule>,
    pub levels: Vec<ModuleMorphism>,
}

impl SimplicialMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Arc<SimplicialModule>,
        target: Arc<SimplicialModule>,
        levels: Vec<ModuleMorphism>,
    ) -> Result<Self> {
        let name = name.into();
        if source.truncation() != target.truncation() || levels.len() != source.truncation() + 1 {
            return Err(Error::SizeMismatch {
                what: format!("levels of {name}"),
                expected: source.truncation() + 1,
                actual: levels.len(),
            });
        }
        for (n, f) in levels.iter().enumerate() {
            if f.source().size() != source.level(n).size() || f.target().size() != target.level(n).size() {
                return Err(Error::SizeMismatch {
                    what: format!("level {n} of {name}"),
                    expected: source.level(n).size(),
                    actual: f.source().size(),
                });
            }
        }
        Ok(SimplicialMorphism {
            name,
            source,
            target,
            levels,
        })
    }

    pub fn from_tables(
        name: impl Into<String>,
        source: Arc<SimplicialModule>,
        target: Arc<SimplicialModule>,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let name = name.into();
        let mut levels = Vec::with_capacity(tables.len());
        for (n, t) in tables.into_iter().enumerate() {
            if n > source.truncation() || n > target.truncation() {
                return Err(Error::SizeMismatch {
                    what: format!("levels of {name}"),
                    expected: source.truncation() + 1,
                    actual: n + 1,
                });
            }
            levels.push(ModuleMorphism::new(
                format!("{name}_{n}"),
                source.level(n).clone(),
                target.level(n).clone(),
                t,
            )?);
        }
        Self::new(name, source, target, levels)
    }

    pub fn identity(x: Arc<SimplicialModule>) -> Self {
        let levels = x.levels().iter().map(|l| ModuleMorphism::identity(l.clone())).collect();
        Self::new(format!("id_{}", x.name()), x.clone(), x, levels).expect("identity")
    }

    pub fn zero(source: Arc<SimplicialModule>, target: Arc<SimplicialModule>) -> Result<Self> {
        let levels = (0..=source.truncation())
            .map(|n| ModuleMorphism::zero(source.level(n).clone(), target.level(n).clone()))
            .collect::<Result<_>>()?;
        Self::new(format!("0_{}_{}", source.name(), target.name()), source, target, levels)
    }

    pub fn level(&self, n: usize) -> &ModuleMorphism {
        &self.levels[n]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMorphism) -> Result<SimplicialMorphism> {
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(f, g)| f.then(g))
            .collect::<Result<_>>()?;
        Self::new(
            format!("{}.{}", other.name, self.name),
            self.source.clone(),
            other.target.clone(),
            levels,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|f| f.is_zero())
    }

    pub fn tables_equal(&self, other: &SimplicialMorphism) -> bool {
        self.levels.len() == other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a == b)
    }
}

/// Linearity at each level and commutation with faces and degeneracies.
pub fn check_simplicial_morphism(f: &SimplicialMorphism) -> AxiomReport {
    let mut report = AxiomReport::new(&f.name, true);
    let bad = (0..f.levels.len()).find(|&n| !check_morphism(&f.levels[n]).passed());
    report.push(Check::from_outcome(
        "levels_linear",
        Tier::Axiom,
        bad.map(|n| Witness::unlabeled(vec![n])),
    ));
    let (x, y) = (&f.source, &f.target);
    let mut face_hit = None;
    let mut degen_hit = None;
    for n in 0..=x.truncation() {
        for e in 0..x.level(n).size() {
            if face_hit.is_none() && n >= 1 {
                for i in 0..=n {
                    if f.levels[n - 1].apply(x.face(n, i).apply(e)) != y.face(n, i).apply(f.levels[n].apply(e)) {
                        face_hit = Some(vec![n, i, e]);
                        break;
                    }
                }
            }
            if degen_hit.is_none() && n < x.truncation() {
                for i in 0..=n {
                    if f.levels[n + 1].apply(x.degeneracy(n, i).apply(e))
                        != y.degeneracy(n, i).apply(f.levels[n].apply(e))
                    {
                        degen_hit = Some(vec![n, i, e]);
                        break;
                    }
                }
            }
        }
    }
    report.push(Check::from_outcome("commutes_faces", Tier::Axiom, face_hit.map(Witness::unlabeled)));
    report.push(Check::from_outcome(
        "commutes_degeneracies",
        Tier::Axiom,
        degen_hit.map(Witness::unlabeled),
    ));
    report
}

/// Level `n` is the direct sum of one copy of `X_n` per `n`-simplex of `k`;
/// structure maps act on each copy and move it along the simplex.
pub fn tensor_with_simplicial_set(
    x: &SimplicialModule,
    k: &FiniteSimplicialSet,
    element_budget: usize,
) -> Result<SimplicialModule> {
    let top = x.truncation();
    if k.truncation() < top {
        return Err(Error::Precondition(format!(
            "{} is truncated below level {top}",
            k.name
        )));
    }
    let mut levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        levels.push(Arc::new(TernaryGammaModule::direct_sum(
            format!("{}(x){}_{n}", x.name(), k.name),
            vec![x.level(n).clone(); k.counts[n]],
            element_budget,
        )?));
    }
    let mut faces = vec![Vec::new(); top + 1];
    let mut degens = vec![Vec::new(); top + 1];
    for n in 0..=top {
        if n >= 1 {
            for i in 0..=n {
                let parts: Vec<(usize, usize, &ModuleMorphism)> = (0..k.counts[n])
                    .map(|s| (s, k.faces[n][i][s], x.face(n, i)))
                    .collect();
                faces[n].push(sum_map(&levels[n], &levels[n - 1], &parts));
            }
        }
        if n < top {
            for i in 0..=n {
                let parts: Vec<(usize, usize, &ModuleMorphism)> = (0..k.counts[n])
                    .map(|s| (s, k.degeneracies[n][i][s], x.degeneracy(n, i)))
                    .collect();
                degens[n].push(sum_map(&levels[n], &levels[n + 1], &parts));
            }
        }
    }
    SimplicialModule::from_tables(format!("{}(x){}", x.name(), k.name), levels, faces, degens)
}

/// Table of the map between direct sums sending component `from` through
/// `f` into component `to` (summing collisions), for each `(from, to, f)`.
pub(crate) fn sum_map(
    src: &TernaryGammaModule,
    dst: &TernaryGammaModule,
    parts: &[(usize, usize, &ModuleMorphism)],
) -> Vec<usize> {
    let dst_factors: Vec<Arc<TernaryGammaModule>> = match dst.sum_factors() {
        Some(f) => f.to_vec(),
        None => vec![Arc::new(dst.clone())],
    };
    (0..src.size())
        .into_par_iter()
        .map(|e| {
            let comps = src.components(e);
            let mut out: Vec<usize> = dst_factors.iter().map(|f| f.zero()).collect();
            for &(from, to, f) in parts {
                let v = f.apply(comps[from]);
                out[to] = dst_factors[to].add(out[to], v);
            }
            dst.encode(&out)
        })
        .collect()
}

/// Level-wise direct sum `X × Y` with componentwise structure maps.
pub fn product_simplicial(
    x: &SimplicialModule,
    y: &SimplicialModule,
    element_budget: usize,
) -> Result<SimplicialModule> {
    let top = x.truncation();
    let mut levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        levels.push(Arc::new(TernaryGammaModule::direct_sum(
            format!("{}x{}_{n}", x.name(), y.name()),
            vec![x.level(n).clone(), y.level(n).clone()],
            element_budget,
        )?));
    }
    let mut faces = vec![Vec::new(); top + 1];
    let mut degens = vec![Vec::new(); top + 1];
    for n in 0..=top {
        if n >= 1 {
            for i in 0..=n {
                faces[n].push(sum_map(&levels[n], &levels[n - 1], &[(0, 0, x.face(n, i)), (1, 1, y.face(n, i))]));
            }
        }
        if n < top {
            for i in 0..=n {
                degens[n].push(sum_map(
                    &levels[n],
                    &levels[n + 1],
                    &[(0, 0, x.degeneracy(n, i)), (1, 1, y.degeneracy(n, i))],
                ));
            }
        }
    }
    SimplicialModule::from_tables(format!("{}x{}", x.name(), y.name()), levels, faces, degens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn constant_and_zero_pass() {
        let m = Arc::new(corpus::mb1());
        assert!(check_simplicial(&SimplicialModule::constant(m.clone(), 3)).passed());
        assert!(check_simplicial(&SimplicialModule::zero(m.semiring().clone(), 3)).passed());
    }

    #[test]
    fn broken_face_is_caught_and_replays() {
        let m = Arc::new(corpus::mb1());
        let x = SimplicialModule::constant(m, 3).with_face(2, 0, vec![0, 0]).unwrap();
        let r = check_simplicial(&x);
        assert!(!r.passed());
        for c in r.failures() {
            assert!(simplicial_violation(&x, &c.name, &c.witness.as_ref().unwrap().values));
        }
    }

    #[test]
    fn level_size_mismatch_is_an_error() {
        let m = Arc::new(corpus::mb1());
        let z = Arc::new(corpus::zero_b1());
        let res = SimplicialModule::from_tables("bad", vec![m, z], vec![vec![], vec![vec![0, 0], vec![0, 0]]], vec![vec![vec![0]], vec![]]);
        assert!(res.is_err());
    }

    #[test]
    fn tensor_with_sets() {
        let m = Arc::new(corpus::mb1());
        let x = SimplicialModule::constant(m, 3);
        let d0 = tensor_with_simplicial_set(&x, &FiniteSimplicialSet::point(3), 4096).unwrap();
        assert!(d0.levels().iter().all(|l| l.size() == 2));
        let d1 = tensor_with_simplicial_set(&x, &FiniteSimplicialSet::delta(1, 3), 4096).unwrap();
        for n in 0..=3 {
            assert_eq!(d1.level(n).size(), 2usize.pow(n as u32 + 2));
        }
        assert!(check_simplicial(&d1).passed());
        let two = tensor_with_simplicial_set(&x, &FiniteSimplicialSet::discrete(2, 3), 4096).unwrap();
        assert!(two.levels().iter().all(|l| l.size() == 4));
        assert!(check_simplicial(&two).passed());
    }

    #[test]
    fn operators_follow_sequences() {
        let m = Arc::new(corpus::mb1());
        let x = SimplicialModule::constant(m, 3);
        let d1 = tensor_with_simplicial_set(&x, &FiniteSimplicialSet::delta(1, 3), 4096).unwrap();
        // the vertex (0) pulled back along [2] -> [0] is the constant 2-simplex
        let v = d1.level(0).encode(&[1, 0]);
        let w = d1.operator(0, &[0, 0, 0], v);
        assert_eq!(d1.level(2).components(w), vec![1, 0, 0, 0]);
    }
}
