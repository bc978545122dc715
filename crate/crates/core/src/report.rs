//! Pass/fail reports with replayable witnesses.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be stated on this instance (for example a
    /// connecting morphism that does not exist without additive inverses).
    Unavailable,
}

/// Which family a check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// An equation of the defining axioms.
    Axiom,
    /// A normalization axiom added on top of the defining ones.
    Normalization,
    /// Well-formedness of a construction or a certified property.
    Structural,
    /// Certified by an explicit witness object (e.g. a homotopy).
    Strong,
    /// Certified only by its shadow on homology.
    Weak,
}

/// A concrete tuple violating an equation. `values` are dense indices that
/// can be replayed against the tables; `labels` are the display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub values: Vec<usize>,
    pub labels: Vec<String>,
}

impl Witness {
    pub fn new(values: Vec<usize>, labels: Vec<String>) -> Self {
        debug_assert_eq!(values.len(), labels.len());
        Witness { values, labels }
    }

    pub fn unlabeled(values: Vec<usize>) -> Self {
        let labels = values.iter().map(|v| v.to_string()).collect();
        Witness { values, labels }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Witness", 2)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("values", &self.values)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub tier: Option<Tier>,
}

impl Check {
    pub fn pass(name: impl Into<String>, tier: Tier) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            tier: Some(tier),
        }
    }

    pub fn fail(name: impl Into<String>, tier: Tier, witness: Witness) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness),
            tier: Some(tier),
        }
    }

    pub fn unavailable(name: impl Into<String>, tier: Tier) -> Self {
        Check {
            name: name.into(),
            status: Status::Unavailable,
            witness: None,
            tier: Some(tier),
        }
    }

    pub fn from_outcome(name: impl Into<String>, tier: Tier, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Check::fail(name, tier, w),
            None => Check::pass(name, tier),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub subject: String,
    pub strict_mode: bool,
    pub checks: Vec<Check>,
    pub artifacts: BTreeMap<String, serde_json::Value>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>, strict_mode: bool) -> Self {
        AxiomReport {
            subject: subject.into(),
            strict_mode,
            checks: Vec::new(),
            artifacts: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn artifact(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("artifact serializes");
        self.artifacts.insert(key.into(), value);
    }

    /// True when no check failed. Unavailable checks do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Pass/fail vector, used to compare reports of relabeled inputs.
    pub fn status_vector(&self) -> Vec<(String, Status)> {
        self.checks
            .iter()
            .map(|c| (c.name.clone(), c.status))
            .collect()
    }

    /// Appends the checks of `other`, prefixing their names. Merging is
    /// order-preserving, so reports assembled from parallel workers are
    /// deterministic as long as the parts are merged in index order.
    pub fn absorb(&mut self, prefix: &str, other: AxiomReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}.{}", c.name);
            }
            self.checks.push(c);
        }
        for (k, v) in other.artifacts {
            let key = if prefix.is_empty() {
                k
            } else {
                format!("{prefix}.{k}")
            };
            self.artifacts.insert(key, v);
        }
    }
}
