use serde::Serialize;

/// Run-wide knobs. Every report embeds the configuration it ran under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorkbenchConfig {
    /// Enforce the zero-absorption normalization axioms.
    pub strict_zero: bool,
    /// Highest simplicial level kept by truncated simplicial objects.
    pub truncation: usize,
    /// Maximum carrier size of any constructed object.
    pub element_budget: usize,
    /// Maximum candidates explored by enumerations and searches.
    pub search_budget: u64,
    pub seed: u64,
}

impl Default for WorkbenchConfig {
    fn default() -> Self {
        WorkbenchConfig {
            strict_zero: true,
            truncation: 3,
            element_budget: 4096,
            search_budget: 10_000_000,
            seed: 0,
        }
    }
}

impl WorkbenchConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.element_budget == 0 || self.search_budget == 0 {
            return Err(crate::Error::Precondition(
                "budgets must be positive".to_string(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}
