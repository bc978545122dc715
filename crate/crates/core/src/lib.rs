//! Finite ternary Γ-semirings and their modules: axiom checking, categorical
//! constructions, simplicial homology, 3-angles and spectra, all on explicit
//! tables.

pub mod algebra;
pub mod angulation;
pub mod config;
pub mod exactness;
pub mod monoidal;
pub mod corpus;
mod error;
pub mod report;
pub mod scan;
pub mod simplicial;
pub mod spectrum;

pub use algebra::*;
pub use config::WorkbenchConfig;
pub use error::{Error, Result};
pub use report::{AxiomReport, Check, Status, Tier, Witness};
