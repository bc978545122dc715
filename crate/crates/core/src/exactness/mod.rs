//! Congruences, quotients and finite limits; certification of
//! Barr-exactness on explicit instances.

mod barr;
mod congruence;
mod limits;

pub use barr::{barr_violation, check_barr_exactness, BarrCorpus, BARR_ITEMS};
pub use congruence::{
    coequalizer, congruence_closure, enumerate_congruences, kernel_pair, quotient, Congruence,
};
pub use limits::{
    equalizer, exactness_witness, image_factorization, is_exact_at, is_regular_epi, pullback,
    RegularEpiCertificate, ShortExactData,
};
