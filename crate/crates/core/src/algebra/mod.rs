//! Finite ternary Γ-semirings, their modules and Γ-linear maps.

mod construct;
mod enumerate;
mod module;
mod monoid;
mod morphism;
mod semiring;

pub use construct::{
    inclusion, injection, pairing, product_module, projection, submodule, submodule_generated,
};
pub(crate) use construct::require_same_semiring;
pub use enumerate::{
    enumerate_modules, enumerate_semirings, module_isomorphism, semiring_isomorphism,
    EnumerationMode,
};
pub use module::{check_module, module_violation, same_semiring, TernaryGammaModule};
pub use monoid::{check_monoid, monoid_violation, FiniteCommutativeMonoid};
pub use morphism::{
    check_morphism, enumerate_morphisms, morphism_violation, ModuleMorphism,
};
pub(crate) use morphism::{constrained_morphism_tables, enumerate_morphism_tables, is_linear_table, power, Derivation, Span};
pub use semiring::{check_semiring, semiring_violation, TernaryGammaSemiring};
