use crate::report::{AxiomReport, Check, Tier, Witness};
use crate::scan::first_violation;
use crate::{Error, Result};

/// A finite commutative monoid given by its addition table. Elements are the
/// dense indices `0..size`; names are presentation only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCommutativeMonoid {
    size: usize,
    zero: usize,
    add: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteCommutativeMonoid {
    /// Builds a monoid after structural validation only (table shape and
    /// index ranges). The monoid laws are checked by [`check_monoid`].
    pub fn new(
        size: usize,
        zero: usize,
        add: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::malformed("monoid", "carrier must be non-empty"));
        }
        if zero >= size {
            return Err(Error::malformed(
                "monoid",
                format!("zero index {zero} out of range 0..{size}"),
            ));
        }
        if add.len() != size * size {
            return Err(Error::SizeMismatch {
                what: "addition table".to_string(),
                expected: size * size,
                actual: add.len(),
            });
        }
        if let Some(pos) = add.iter().position(|&v| v >= size) {
            return Err(Error::malformed(
                "monoid",
                format!("addition table entry {pos} is {} (out of range)", add[pos]),
            ));
        }
        if let Some(names) = &names {
            if names.len() != size {
                return Err(Error::SizeMismatch {
                    what: "element names".to_string(),
                    expected: size,
                    actual: names.len(),
                });
            }
        }
        Ok(FiniteCommutativeMonoid {
            size,
            zero,
            add,
            names,
        })
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        FiniteCommutativeMonoid::new(1, 0, vec![0], None).expect("trivial monoid")
    }

    /// `({0,1}, OR)`.
    pub fn boolean() -> Self {
        FiniteCommutativeMonoid::new(2, 0, vec![0, 1, 1, 1], None).expect("boolean monoid")
    }

    /// `Z/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteCommutativeMonoid::new(n, 0, add, None).expect("cyclic monoid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.add
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, i: usize) -> String {
        match &self.names {
            Some(n) => n[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::SizeMismatch {
                what: "element names".to_string(),
                expected: self.size,
                actual: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Whether every element has an additive inverse.
    pub fn is_group(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).any(|b| self.add(a, b) == self.zero))
    }

    /// Additive inverse, when it exists.
    pub fn negate(&self, a: usize) -> Option<usize> {
        (0..self.size).find(|&b| self.add(a, b) == self.zero)
    }

    fn labels(&self, values: &[usize]) -> Vec<String> {
        values.iter().map(|&v| self.name(v)).collect()
    }
}

/// Checks associativity, commutativity and the identity law.
pub fn check_monoid(m: &FiniteCommutativeMonoid) -> AxiomReport {
    let mut report = AxiomReport::new("monoid", false);
    for check in monoid_checks(m, "") {
        report.push(check);
    }
    report
}

pub(crate) fn monoid_checks(m: &FiniteCommutativeMonoid, prefix: &str) -> Vec<Check> {
    let n = m.size();
    let name = |s: &str| format!("{prefix}{s}");
    let assoc = first_violation(&[n, n, n], |t| monoid_violation(m, "associativity", t));
    let comm = first_violation(&[n, n], |t| monoid_violation(m, "commutativity", t));
    let ident = first_violation(&[n], |t| monoid_violation(m, "identity", t));
    vec![
        Check::from_outcome(
            name("associativity"),
            Tier::Axiom,
            assoc.map(|v| Witness::new(v.clone(), m.labels(&v))),
        ),
        Check::from_outcome(
            name("commutativity"),
            Tier::Axiom,
            comm.map(|v| Witness::new(v.clone(), m.labels(&v))),
        ),
        Check::from_outcome(
            name("identity"),
            Tier::Axiom,
            ident.map(|v| Witness::new(v.clone(), m.labels(&v))),
        ),
    ]
}

/// Re-evaluates a monoid law at a witness tuple; `true` means the law is
/// violated there. Unknown law names return `false`.
pub fn monoid_violation(m: &FiniteCommutativeMonoid, law: &str, t: &[usize]) -> bool {
    match (law, t) {
        ("associativity", &[a, b, c]) => m.add(m.add(a, b), c) != m.add(a, m.add(b, c)),
        ("commutativity", &[a, b]) => m.add(a, b) != m.add(b, a),
        ("identity", &[x]) => m.add(m.zero(), x) != x || m.add(x, m.zero()) != x,
        _ => false,
    }
}
