use std::collections::HashMap;
use std::sync::Arc;

use super::homology::is_weak_equivalence;
use super::kan::{is_fibration, is_kan};
use super::object::{
    check_simplicial, product_simplicial, SimplicialModule, SimplicialMorphism,
};
use super::sset::FiniteSimplicialSet;
use crate::algebra::{FiniteCommutativeMonoid, TernaryGammaModule};
use crate::config::WorkbenchConfig;
use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::{Error, Result};

/// The factorization `X → X^{Δ[1]} → X × X` with its certificate.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub object: Arc<SimplicialModule>,
    /// Constant paths.
    pub constant: SimplicialMorphism,
    /// `(ev_0, ev_1)`.
    pub endpoints: SimplicialMorphism,
    pub square: Arc<SimplicialModule>,
    pub certification: AxiomReport,
}

impl PathObject {
    pub fn certified(&self) -> bool {
        self.certification.passed()
    }
}

/// Simplicial maps `K → X` for a finite `K` truncated like `X`, each
/// stored as the concatenation of its values level by level.
struct MapSpace {
    offsets: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

fn enumerate_maps(
    k: &FiniteSimplicialSet,
    x: &SimplicialModule,
    budget: u64,
) -> Result<MapSpace> {
    let top = x.truncation();
    let mut offsets = vec![0];
    for m in 0..=top {
        offsets.push(offsets[m] + k.counts[m]);
    }
    // one representation as a degeneracy, for forced simplices
    let mut forced: Vec<Vec<Option<(usize, usize)>>> = vec![Vec::new(); top + 1];
    for m in 0..=top {
        forced[m] = vec![None; k.counts[m]];
        if m > 0 {
            for i in 0..m {
                for (tau, &sigma) in k.degeneracies[m - 1][i].iter().enumerate() {
                    forced[m][sigma].get_or_insert((i, tau));
                }
            }
        }
    }
    let cells: Vec<(usize, usize)> = (0..=top)
        .flat_map(|m| (0..k.counts[m]).map(move |s| (m, s)))
        .collect();
    let mut value = vec![0usize; cells.len()];
    let mut maps = Vec::new();
    let mut nodes = 0u64;
    let fits = |value: &[usize], m: usize, s: usize, v: usize| -> bool {
        (m == 0
            || (0..=m).all(|i| x.face(m, i).apply(v) == value[offsets[m - 1] + k.faces[m][i][s]]))
            && (m == 0
                || (0..m).all(|i| {
                    k.degeneracies[m - 1][i]
                        .iter()
                        .enumerate()
                        .all(|(tau, &sigma)| sigma != s || x.degeneracy(m - 1, i).apply(value[offsets[m - 1] + tau]) == v)
                }))
    };
    // depth-first over cells with explicit candidate cursors
    let mut cursor = vec![0usize; cells.len()];
    let mut depth = 0usize;
    loop {
        if depth == cells.len() {
            maps.push(value.clone());
            if depth == 0 {
                break;
            }
            depth -= 1;
            cursor[depth] += 1;
            continue;
        }
        nodes += 1;
        if nodes > budget {
            return Err(Error::SearchSpaceTooLarge {
                what: format!("simplicial maps {} -> {}", k.name, x.name()),
                space: format!("more than {budget} partial maps"),
                budget,
            });
        }
        let (m, s) = cells[depth];
        let candidates: Vec<usize> = match forced[m][s] {
            Some((i, tau)) => vec![x.degeneracy(m - 1, i).apply(value[offsets[m - 1] + tau])],
            None => (0..x.level(m).size()).collect(),
        };
        let mut advanced = false;
        while cursor[depth] < candidates.len() {
            let v = candidates[cursor[depth]];
            if fits(&value, m, s, v) {
                value[depth] = v;
                depth += 1;
                if depth < cells.len() {
                    cursor[depth] = 0;
                }
                advanced = true;
                break;
            }
            cursor[depth] += 1;
        }
        if !advanced {
            if depth == 0 {
                break;
            }
            depth -= 1;
            cursor[depth] += 1;
        }
    }
    Ok(MapSpace { offsets, maps })
}

/// The pointwise module on a set of maps closed under the operations.
fn pointwise_module(
    name: String,
    x: &SimplicialModule,
    space: &MapSpace,
) -> Result<TernaryGammaModule> {
    let index: HashMap<&[usize], usize> = space
        .maps
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let level_of = |pos: usize| space.offsets.iter().rposition(|&o| o <= pos).expect("offset");
    let lookup = |v: Vec<usize>| -> Result<usize> {
        index.get(v.as_slice()).copied().ok_or_else(|| {
            Error::Inconsistent(format!("pointwise operation leaves the maps into {}", x.name()))
        })
    };
    let size = space.maps.len();
    let zero = lookup(
        (0..space.offsets[space.offsets.len() - 1])
            .map(|p| x.level(level_of(p)).zero())
            .collect(),
    )?;
    let mut add = Vec::with_capacity(size * size);
    for a in &space.maps {
        for b in &space.maps {
            let sum = a
                .iter()
                .zip(b)
                .enumerate()
                .map(|(p, (&u, &v))| x.level(level_of(p)).add(u, v))
                .collect();
            add.push(lookup(sum)?);
        }
    }
    let carrier = FiniteCommutativeMonoid::new(size, zero, add, None)?;
    let semiring = x.semiring().clone();
    let scalars = semiring.scalar_count();
    let mut by_scalar = vec![vec![0usize; size]; scalars];
    for (s, row) in by_scalar.iter_mut().enumerate() {
        for (i, a) in space.maps.iter().enumerate() {
            let v = a
                .iter()
                .enumerate()
                .map(|(p, &u)| x.level(level_of(p)).act_scalar(s, u))
                .collect();
            row[i] = lookup(v)?;
        }
    }
    let g = semiring.gamma_size();
    let t = semiring.size();
    TernaryGammaModule::from_fn(name, semiring, carrier, |t1, al, m, be, t2| {
        let s = ((t1 * g + al) * g + be) * t + t2;
        by_scalar[s][m]
    })
}

/// Moves the first coordinate of every simplex of `Δ[from]×Δ[1]` along a
/// map `[from] → [to]`, giving indices into the simplices of `Δ[to]×Δ[1]`.
fn reindex(
    from: &FiniteSimplicialSet,
    to_index: &[HashMap<Vec<Vec<usize>>, usize>],
    from_simplices: &[Vec<Vec<Vec<usize>>>],
    theta: &dyn Fn(usize) -> usize,
) -> Vec<Vec<usize>> {
    (0..from.counts.len())
        .map(|m| {
            from_simplices[m]
                .iter()
                .map(|s| {
                    let moved = vec![s[0].iter().map(|&p| theta(p)).collect(), s[1].clone()];
                    to_index[m][&moved]
                })
                .collect()
        })
        .collect()
}

fn product_simplices(n: usize, top: usize) -> Vec<Vec<Vec<Vec<usize>>>> {
    (0..=top)
        .map(|m| {
            let mut out = Vec::new();
            for a in super::sset::nondecreasing(n, m + 1) {
                for b in super::sset::nondecreasing(1, m + 1) {
                    out.push(vec![a.clone(), b]);
                }
            }
            out
        })
        .collect()
}

/// Builds `X^{Δ[1]}` (level `n` = simplicial maps `Δ[n]×Δ[1] → X` within the
/// truncation, with pointwise operations), the constant-path map and the
/// endpoint map, and certifies the factorization: the first map is a weak
/// equivalence and the second a fibration.
pub fn path_object(x: &Arc<SimplicialModule>, config: &WorkbenchConfig) -> Result<PathObject> {
    let kan = is_kan(x, config.search_budget)?;
    if !kan.holds {
        return Err(Error::Precondition(format!("{} is not fibrant", x.name())));
    }
    let top = x.truncation();
    let ks: Vec<FiniteSimplicialSet> = (0..=top)
        .map(|n| FiniteSimplicialSet::nerve_product(format!("D{n}xD1"), &[n, 1], top))
        .collect();
    let simplices: Vec<Vec<Vec<Vec<Vec<usize>>>>> = (0..=top).map(|n| product_simplices(n, top)).collect();
    let index: Vec<Vec<HashMap<Vec<Vec<usize>>, usize>>> = simplices
        .iter()
        .map(|levels| {
            levels
                .iter()
                .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
                .collect()
        })
        .collect();
    let mut spaces = Vec::with_capacity(top + 1);
    let mut levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let space = enumerate_maps(&ks[n], x, config.search_budget)?;
        if space.maps.len() > config.element_budget {
            return Err(Error::ElementBudget {
                what: format!("level {n} of the path object of {}", x.name()),
                needed: space.maps.len().to_string(),
                budget: config.element_budget,
            });
        }
        levels.push(Arc::new(pointwise_module(format!("P{n}({})", x.name()), x, &space)?));
        spaces.push(space);
    }
    let lookup: Vec<HashMap<&[usize], usize>> = spaces
        .iter()
        .map(|sp| sp.maps.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect())
        .collect();
    // precomposition with θ × id for θ: [n'] → [n]
    let precompose = |from_n: usize, to_n: usize, theta: &dyn Fn(usize) -> usize| -> Result<Vec<usize>> {
        let moved = reindex(&ks[from_n], &index[to_n], &simplices[from_n], theta);
        spaces[to_n]
            .maps
            .iter()
            .map(|phi| {
                let v: Vec<usize> = (0..=top)
                    .flat_map(|m| moved[m].iter().map(move |&t| (m, t)))
                    .map(|(m, t)| phi[spaces[to_n].offsets[m] + t])
                    .collect();
                lookup[from_n].get(v.as_slice()).copied().ok_or_else(|| {
                    Error::Inconsistent("precomposition leaves the map space".into())
                })
            })
            .collect()
    };
    let mut faces = vec![Vec::new(); top + 1];
    let mut degens = vec![Vec::new(); top + 1];
    for n in 0..=top {
        if n >= 1 {
            for i in 0..=n {
                faces[n].push(precompose(n - 1, n, &move |p| if p >= i { p + 1 } else { p })?);
            }
        }
        if n < top {
            for i in 0..=n {
                degens[n].push(precompose(n + 1, n, &move |p| if p > i { p - 1 } else { p })?);
            }
        }
    }
    let object = Arc::new(SimplicialModule::from_tables(
        format!("{}^D1", x.name()),
        levels,
        faces,
        degens,
    )?);
    // constant paths: σ = (a, b) ↦ a^*(x)
    let mut constant_tables = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let table = (0..x.level(n).size())
            .map(|e| {
                let v: Vec<usize> = (0..=top)
                    .flat_map(|m| simplices[n][m].iter().map(move |s| (m, s)))
                    .map(|(_, s)| x.operator(n, &s[0], e))
                    .collect();
                lookup[n].get(v.as_slice()).copied().ok_or_else(|| {
                    Error::Inconsistent("a constant path is not a simplicial map".into())
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        constant_tables.push(table);
    }
    let constant = SimplicialMorphism::from_tables("const", x.clone(), object.clone(), constant_tables)?;
    let square = Arc::new(product_simplicial(x, x, config.element_budget)?);
    let mut endpoint_tables = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let ends: Vec<usize> = (0..2)
            .map(|e| index[n][n][&vec![(0..=n).collect(), vec![e; n + 1]]])
            .collect();
        let off = spaces[n].offsets[n];
        endpoint_tables.push(
            spaces[n]
                .maps
                .iter()
                .map(|phi| square.level(n).encode(&[phi[off + ends[0]], phi[off + ends[1]]]))
                .collect(),
        );
    }
    let endpoints = SimplicialMorphism::from_tables("ev", object.clone(), square.clone(), endpoint_tables)?;

    let mut cert = AxiomReport::new(format!("path object of {}", x.name()), config.strict_zero);
    cert.absorb("path", check_simplicial(&object));
    let weq = is_weak_equivalence(&constant, config.strict_zero)?;
    cert.push(Check::from_outcome(
        "constant_is_weak_equivalence",
        Tier::Structural,
        (!weq.holds).then(|| Witness::unlabeled(vec![])),
    ));
    cert.absorb("constant", weq.report);
    let fib = is_fibration(&endpoints, config.search_budget)?;
    cert.push(Check::from_outcome(
        "endpoints_are_fibration",
        Tier::Structural,
        (!fib.holds).then(|| Witness::unlabeled(vec![])),
    ));
    cert.absorb("endpoints", fib.report);
    let diagonal_hit = (0..=top).find_map(|n| {
        (0..x.level(n).size())
            .find(|&e| endpoints.level(n).apply(constant.level(n).apply(e)) != square.level(n).encode(&[e, e]))
            .map(|e| vec![n, e])
    });
    cert.push(Check::from_outcome(
        "diagonal_factors",
        Tier::Structural,
        diagonal_hit.map(Witness::unlabeled),
    ));
    cert.artifact("level_sizes", object.levels().iter().map(|l| l.size()).collect::<Vec<_>>());
    Ok(PathObject {
        object,
        constant,
        endpoints,
        square,
        certification: cert,
    })
}
