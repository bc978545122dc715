//! Prime Γ-ideals and the spectrum with its Zariski-type topology, sheaves
//! of modules on finite spaces, and Čech cochains of covers.

mod cech;
mod ideal;
mod sheaf;
mod space;

pub use cech::{cech_cohomology, cech_complex, cech_complex_upto, CechCohomology, CechComplex, CechValue, CECH_READING};
pub use ideal::{enumerate_ideals, is_prime, is_prime_with, primality_witness, GammaIdeal, IdealConvention, Primality};
pub use sheaf::{check_sheaf, compare_cover, sheaf_violation, CoverComparison, TriadicSheaf};
pub use space::{check_spec, check_topology, spec, spec_violation, ClosedSet, FiniteSpace, SpecSpace};
