//! Truncated simplicial modules, Moore homology, Kan fibrations, path
//! objects, homotopies and derived hom.

mod cochain;
mod derived;
mod homology;
mod homotopy;
mod kan;
mod object;
mod path;
mod sset;

pub use cochain::{
    alternating_sum, cochain_cohomology, cohomology_with_signs, cosimplicial_equalizer, CohomologyModule,
};
pub use derived::{
    cosimplicial_hom, derived_hom, sum_augmentation, CosimplicialHom, DerivedHom, DerivedHomValue,
    DERIVED_HOM_READING,
};
pub use homology::{
    homology, induced_map, is_weak_equivalence, moore_complex, Homology, HomologyModule,
    MooreComplex, MooreTerm, WeakEquivalence,
};
pub use homotopy::{
    check_homotopy, find_simplicial_homotopy, homotopy_ends, homotopy_from_components, Homotopy,
    HomotopySearch, Orientation,
};
pub(crate) use homotopy::{interval_degeneracy, interval_face};
pub use kan::{is_fibration, is_kan, Fibration};
pub use object::{
    check_simplicial, check_simplicial_morphism, product_simplicial, simplicial_violation,
    tensor_with_simplicial_set, SimplicialModule, SimplicialMorphism,
};
pub(crate) use object::sum_map;
pub use path::{path_object, PathObject};
pub use sset::{FiniteSimplicialSet, Simplex};
