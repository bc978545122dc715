use thiserror::Error;

/// Errors raised by the workbench. Axiom failures are never errors: they are
/// reported as failing checks inside an [`AxiomReport`](crate::AxiomReport).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed {what}: {detail}")]
    Malformed { what: String, detail: String },

    #[error("size mismatch in {what}: expected {expected} entries, got {actual}")]
    SizeMismatch {
        what: String,
        expected: usize,
        actual: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search space too large: {space} candidates ({what}) exceeds budget {budget}")]
    SearchSpaceTooLarge {
        what: String,
        space: String,
        budget: u64,
    },

    #[error("element budget exceeded: {what} needs {needed} elements, budget is {budget}")]
    ElementBudget {
        what: String,
        needed: String,
        budget: usize,
    },

    #[error("saturation unbounded within budget: {0}")]
    SaturationUnbounded(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency error: {0}")]
    Inconsistent(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn malformed(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Malformed {
            what: what.into(),
            detail: detail.into(),
        }
    }
}
