//! Multilinear maps, the tensor product and the internal hom.

mod hom;
mod multilinear;
mod presentation;
mod tensor;

pub use hom::{
    check_bracket_closure, curry_check, curry_violation, hom_bracket, internal_hom, InternalHom,
};
pub use multilinear::{enumerate_multilinear, multilinear_violation, MultilinearMap};
pub use presentation::{Monomial, PresentedModule, RewriteSystem};
pub use tensor::{tensor, TensorProduct};
