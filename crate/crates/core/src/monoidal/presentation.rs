//! Finitely presented commutative monoids with a Γ-action, resolved by
//! completion of the defining relations into a confluent rewriting system.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::sync::Arc;

use crate::algebra::{FiniteCommutativeMonoid, TernaryGammaModule, TernaryGammaSemiring};
use crate::{Error, Result};

/// A monomial: multiplicity of each generator. The empty monomial is zero.
pub type Monomial = Vec<u32>;

/// Degree first, then lexicographic with the first generator heaviest.
fn cmp_monomial(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(l: &Monomial, w: &Monomial) -> bool {
    l.iter().zip(w).all(|(a, b)| a <= b)
}

fn plus(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A rewriting system `lhs → rhs` with `lhs > rhs`.
#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    pub rules: Vec<(Monomial, Monomial)>,
}

impl RewriteSystem {
    pub fn normal_form(&self, w: &Monomial) -> Monomial {
        let mut w = w.clone();
        'outer: loop {
            for (l, r) in &self.rules {
                if divides(l, &w) {
                    for i in 0..w.len() {
                        w[i] = w[i] - l[i] + r[i];
                    }
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Completes `relations` into a confluent system (critical pairs at the
    /// componentwise maximum of overlapping left sides). Termination follows
    /// from Dickson's lemma; `step_budget` bounds the work anyway.
    pub fn complete(relations: &[(Monomial, Monomial)], step_budget: usize) -> Result<Self> {
        let mut sys = RewriteSystem::default();
        let mut queue: VecDeque<(Monomial, Monomial)> = relations.iter().cloned().collect();
        let mut steps = 0usize;
        while let Some((a, b)) = queue.pop_front() {
            steps += 1;
            if steps > step_budget {
                return Err(Error::SaturationUnbounded(format!(
                    "completion did not finish within {step_budget} steps"
                )));
            }
            let (a, b) = (sys.normal_form(&a), sys.normal_form(&b));
            let (l, r) = match cmp_monomial(&a, &b) {
                Ordering::Equal => continue,
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
            };
            // rules whose left side the new rule reduces are re-queued
            let mut kept = Vec::with_capacity(sys.rules.len());
            for (l2, r2) in sys.rules.drain(..) {
                if divides(&l, &l2) {
                    queue.push_back((l2, r2));
                } else {
                    kept.push((l2, r2));
                }
            }
            sys.rules = kept;
            for (l2, r2) in &sys.rules {
                let overlap = l.iter().zip(l2).any(|(x, y)| *x > 0 && *y > 0);
                if !overlap {
                    continue;
                }
                let lcm: Monomial = l.iter().zip(l2).map(|(x, y)| *x.max(y)).collect();
                let via_new: Monomial = (0..l.len()).map(|i| lcm[i] - l[i] + r[i]).collect();
                let via_old: Monomial = (0..l.len()).map(|i| lcm[i] - l2[i] + r2[i]).collect();
                queue.push_back((via_new, via_old));
            }
            sys.rules.push((l, r));
            for i in 0..sys.rules.len() {
                let r = sys.normal_form(&sys.rules[i].1);
                sys.rules[i].1 = r;
            }
        }
        Ok(sys)
    }

    /// Irreducible monomials, or `None` when some generator has no pure
    /// power among the left sides (infinitely many normal forms).
    pub fn irreducibles(&self, generators: usize, budget: usize) -> Result<Option<Vec<Monomial>>> {
        let mut bounds = vec![u32::MAX; generators];
        for (l, _) in &self.rules {
            let support: Vec<usize> = (0..generators).filter(|&i| l[i] > 0).collect();
            if support.len() == 1 {
                let i = support[0];
                bounds[i] = bounds[i].min(l[i]);
            }
        }
        if bounds.iter().any(|&b| b == u32::MAX) {
            return Ok(None);
        }
        let mut box_size: u128 = 1;
        for &b in &bounds {
            box_size = box_size.saturating_mul(b as u128);
        }
        if box_size > (budget as u128).saturating_mul(64).max(1 << 20) {
            return Err(Error::ElementBudget {
                what: "normal forms".into(),
                needed: format!("up to {box_size}"),
                budget,
            });
        }
        let mut out = Vec::new();
        let mut w: Monomial = vec![0; generators];
        loop {
            if !self.rules.iter().any(|(l, _)| divides(l, &w)) {
                out.push(w.clone());
                if out.len() > budget {
                    return Err(Error::ElementBudget {
                        what: "normal forms".into(),
                        needed: format!("more than {budget}"),
                        budget,
                    });
                }
            }
            let mut i = generators;
            loop {
                if i == 0 {
                    out.sort_by(cmp_monomial);
                    return Ok(Some(out));
                }
                i -= 1;
                w[i] += 1;
                if w[i] < bounds[i] {
                    break;
                }
                w[i] = 0;
            }
        }
    }
}

/// A module given by generators, relations and the action on generators.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub generator_names: Vec<String>,
    pub relations: Vec<(Monomial, Monomial)>,
    /// `action[s][i]`: the image of generator `i` under scalar context `s`,
    /// as a monomial.
    pub action: Vec<Vec<Monomial>>,
    pub bound: usize,
    pub system: Option<RewriteSystem>,
    pub elements: Vec<Monomial>,
    pub resolved: Option<Arc<TernaryGammaModule>>,
}

impl PresentedModule {
    pub fn new(
        generator_names: Vec<String>,
        relations: Vec<(Monomial, Monomial)>,
        action: Vec<Vec<Monomial>>,
        bound: usize,
    ) -> Self {
        PresentedModule {
            generator_names,
            relations,
            action,
            bound,
            system: None,
            elements: Vec::new(),
            resolved: None,
        }
    }

    fn act_monomial(&self, s: usize, w: &Monomial) -> Monomial {
        let mut out = vec![0; w.len()];
        for (i, &k) in w.iter().enumerate() {
            for _ in 0..k {
                out = plus(&out, &self.action[s][i]);
            }
        }
        out
    }

    /// Closes the relations under the action, completes them and builds the
    /// finite module of normal forms.
    pub fn resolve(
        &mut self,
        name: &str,
        semiring: Arc<TernaryGammaSemiring>,
        step_budget: usize,
    ) -> Result<Arc<TernaryGammaModule>> {
        let k = self.generator_names.len();
        let scalars = self.action.len();
        let mut rels = self.relations.clone();
        let mut seen: std::collections::HashSet<(Monomial, Monomial)> = rels.iter().cloned().collect();
        let mut head = 0;
        while head < rels.len() {
            let (a, b) = rels[head].clone();
            head += 1;
            for s in 0..scalars {
                let pair = (self.act_monomial(s, &a), self.act_monomial(s, &b));
                if pair.0 != pair.1 && seen.insert(pair.clone()) {
                    rels.push(pair);
                }
            }
            if rels.len() > step_budget {
                return Err(Error::SaturationUnbounded(format!(
                    "{name}: action closure of the relations exceeds {step_budget}"
                )));
            }
        }
        let sys = RewriteSystem::complete(&rels, step_budget)?;
        let elements = sys.irreducibles(k, self.bound)?.ok_or_else(|| {
            Error::SaturationUnbounded(format!(
                "{name}: some generator has infinitely many normal forms"
            ))
        })?;
        if elements.len() > self.bound {
            return Err(Error::SaturationUnbounded(format!(
                "{name}: {} normal forms exceed the element budget {}",
                elements.len(),
                self.bound
            )));
        }
        let index: std::collections::HashMap<Monomial, usize> =
            elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let n = elements.len();
        let mut add = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                add.push(index[&sys.normal_form(&plus(a, b))]);
            }
        }
        let names: Vec<String> = elements.iter().map(|w| self.display(w)).collect();
        let carrier = FiniteCommutativeMonoid::new(n, 0, add, Some(names))?;
        let acted: Vec<Vec<usize>> = (0..scalars)
            .map(|s| {
                elements
                    .iter()
                    .map(|w| index[&sys.normal_form(&self.act_monomial(s, w))])
                    .collect()
            })
            .collect();
        let module = TernaryGammaModule::from_fn(name, semiring.clone(), carrier, |t1, al, x, be, t2| {
            let t = semiring.size();
            let g = semiring.gamma_size();
            acted[((t1 * g + al) * g + be) * t + t2][x]
        })?;
        let module = Arc::new(module);
        self.system = Some(sys);
        self.elements = elements;
        self.resolved = Some(module.clone());
        Ok(module)
    }

    /// Index of the normal form of `w` in the resolved module.
    pub fn element_of(&self, w: &Monomial) -> Option<usize> {
        let nf = self.system.as_ref()?.normal_form(w);
        self.elements.iter().position(|e| *e == nf)
    }

    /// Every listed relation holds in the resolved module.
    pub fn relations_respected(&self) -> bool {
        self.relations
            .iter()
            .all(|(a, b)| self.element_of(a).is_some() && self.element_of(a) == self.element_of(b))
    }

    fn display(&self, w: &Monomial) -> String {
        let terms: Vec<String> = w
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    self.generator_names[i].clone()
                } else {
                    format!("{k}{}", self.generator_names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_presentation() {
        // one generator with 3e = 0
        let sys = RewriteSystem::complete(&[(vec![3], vec![0])], 100).unwrap();
        let nf = sys.irreducibles(1, 10).unwrap().unwrap();
        assert_eq!(nf, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(sys.normal_form(&vec![7]), vec![1]);
    }

    #[test]
    fn critical_pairs_are_resolved() {
        let rels = vec![(vec![2, 0], vec![1, 1]), (vec![0, 2], vec![1, 1]), (vec![1, 1], vec![0, 0])];
        let sys = RewriteSystem::complete(&rels, 1000).unwrap();
        let nf = sys.irreducibles(2, 100).unwrap().unwrap();
        // b = b + 2a = (a + b) + a = a, leaving {0, a}
        assert_eq!(nf.len(), 2);
        assert_eq!(sys.normal_form(&vec![1, 0]), sys.normal_form(&vec![0, 1]));
        for (a, b) in &rels {
            assert_eq!(sys.normal_form(a), sys.normal_form(b));
        }
    }

    #[test]
    fn free_generator_is_unbounded() {
        let sys = RewriteSystem::complete(&[(vec![1, 1], vec![1, 0])], 100).unwrap();
        assert!(sys.irreducibles(2, 100).unwrap().is_none());
    }
}
