//! Cones, suspensions and 3-angles of simplicial modules, morphism
//! extension, the long exact homology sequence and the Γ-endomorphism
//! action.

mod angle;
mod cone;
mod extend;
mod gamma;
mod les;

pub use angle::{build_3_angle, certificate_violation, certify, rotate, ThreeAngle};
pub use cone::{
    cone, cone_of, cone_to_suspension, induced_cone_map, is_acyclic, mapping_cone,
    same_simplicial_tables, suspension, suspension_map, Cone, MappingCone,
};
pub use extend::{extend_morphism, Extension, ExtensionMode};
pub use gamma::{gamma_action, gamma_endomorphisms, relabel_angle, GammaEndomorphismMonoid};
pub use les::{les_violation, long_exact_sequence, LongExactSequence};
