//! The built-in instances used by tests, examples and the `corpus` command.

use std::sync::Arc;

use crate::algebra::{
    enumerate_modules, product_module, FiniteCommutativeMonoid, ModuleMorphism,
    TernaryGammaModule, TernaryGammaSemiring,
};
use crate::simplicial::{SimplicialModule, SimplicialMorphism};
use crate::spectrum::{FiniteSpace, TriadicSheaf};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn g() -> Vec<String> {
    vec!["g".to_string()]
}

/// The one-element semiring.
pub fn triv() -> TernaryGammaSemiring {
    let carrier = FiniteCommutativeMonoid::trivial().with_names(names(1)).expect("names");
    TernaryGammaSemiring::from_fn("TRIV", carrier, g(), |_, _, _, _, _| 0).expect("TRIV")
}

/// `{0,1}` with OR and the product `a ∧ b ∧ c`.
pub fn b1() -> TernaryGammaSemiring {
    let carrier = FiniteCommutativeMonoid::boolean().with_names(names(2)).expect("names");
    TernaryGammaSemiring::from_fn("B1", carrier, g(), |a, _, b, _, c| a & b & c).expect("B1")
}

/// `Z/3` with the product `abc mod 3`.
pub fn z3() -> TernaryGammaSemiring {
    let carrier = FiniteCommutativeMonoid::cyclic(3).with_names(names(3)).expect("names");
    TernaryGammaSemiring::from_fn("Z3", carrier, g(), |a, _, b, _, c| a * b * c % 3).expect("Z3")
}

/// `{0,1}²` with componentwise OR and componentwise `a ∧ b ∧ c`: two
/// primes, so a two-point spectrum.
pub fn b1_squared() -> TernaryGammaSemiring {
    let add = (0..16).map(|i| (i / 4) | (i % 4)).collect();
    let names = ["00", "01", "10", "11"].map(String::from).to_vec();
    let carrier = FiniteCommutativeMonoid::new(4, 0, add, Some(names)).expect("carrier");
    TernaryGammaSemiring::from_fn("B1xB1", carrier, g(), |a, _, b, _, c| a & b & c).expect("B1xB1")
}

/// B1 with the single entry `[1, g, 0, g, 0]` overwritten to 1.
pub fn mut1() -> TernaryGammaSemiring {
    b1().with_entry([1, 0, 0, 0, 0], 1).expect("MUT1").renamed("MUT1")
}

/// B1 with two parameters and a table constant across them.
pub fn b1_two_gammas() -> TernaryGammaSemiring {
    let carrier = FiniteCommutativeMonoid::boolean().with_names(names(2)).expect("names");
    TernaryGammaSemiring::from_fn(
        "B1G2",
        carrier,
        vec!["g1".to_string(), "g2".to_string()],
        |a, _, b, _, c| a & b & c,
    )
    .expect("B1G2")
}

/// B1 acting on itself.
pub fn mb1() -> TernaryGammaModule {
    TernaryGammaModule::regular("MB1", Arc::new(b1()))
}

/// Z3 acting on itself.
pub fn mz3() -> TernaryGammaModule {
    TernaryGammaModule::regular("MZ3", Arc::new(z3()))
}

pub fn zero_b1() -> TernaryGammaModule {
    TernaryGammaModule::zero_module(Arc::new(b1())).renamed("ZB1")
}

pub fn zero_z3() -> TernaryGammaModule {
    TernaryGammaModule::zero_module(Arc::new(z3())).renamed("ZZ3")
}

/// `MB1 × MB1`, materialized.
pub fn mb1_squared() -> TernaryGammaModule {
    let m = Arc::new(mb1());
    product_module(&m, &m, 16)
        .expect("MB1xMB1")
        .materialize()
        .renamed("MB1xMB1")
}

/// Every module of size at most 2 over B1, the zero module first.
pub fn small_b1_modules() -> Vec<TernaryGammaModule> {
    let b1 = Arc::new(b1());
    let mut out = vec![zero_b1()];
    for (i, m) in enumerate_modules(&b1, 2, true)
        .expect("B1 modules")
        .into_iter()
        .enumerate()
    {
        let m = if m.same_tables(&mb1()) {
            mb1()
        } else {
            m.renamed(format!("B1M{i}"))
        };
        out.push(m);
    }
    out
}

/// The swap `0 ↔ 1` on MB1 (not additive).
pub fn swap_mb1() -> ModuleMorphism {
    let m = Arc::new(mb1());
    ModuleMorphism::new("swap", m.clone(), m, vec![1, 0]).expect("swap")
}

/// The diagonal `MB1 → MB1 × MB1`.
pub fn diagonal_mb1() -> ModuleMorphism {
    let m = Arc::new(mb1());
    let p = Arc::new(mb1_squared());
    ModuleMorphism::new("diag", m, p, vec![0, 3]).expect("diagonal")
}

/// Doubling `x ↦ 2x` on MZ3.
pub fn doubling_z3() -> ModuleMorphism {
    let m = Arc::new(mz3());
    ModuleMorphism::from_fn("double", m.clone(), m, |x| 2 * x % 3).expect("doubling")
}

/// The constant simplicial object at `m`.
pub fn constant(m: TernaryGammaModule, truncation: usize) -> Arc<SimplicialModule> {
    Arc::new(SimplicialModule::constant(Arc::new(m), truncation))
}

/// `f` repeated at every level, between constant objects.
pub fn constant_map(f: &ModuleMorphism, truncation: usize) -> SimplicialMorphism {
    let x = Arc::new(SimplicialModule::constant(f.source().clone(), truncation));
    let y = Arc::new(SimplicialModule::constant(f.target().clone(), truncation));
    let tables = vec![f.table().to_vec(); truncation + 1];
    SimplicialMorphism::from_tables(f.name(), x, y, tables).expect("constant map")
}

/// The group-complete angle fixture: doubling on the constant object at MZ3.
pub fn z3_angle_base(truncation: usize) -> SimplicialMorphism {
    constant_map(&doubling_z3(), truncation)
}

/// The idempotent angle fixture: the diagonal of the constant object at MB1.
pub fn b1_angle_base(truncation: usize) -> SimplicialMorphism {
    constant_map(&diagonal_mb1(), truncation)
}

/// Every corpus module, one per line of the `corpus` listing.
pub fn modules() -> Vec<TernaryGammaModule> {
    vec![mb1(), mz3(), zero_b1(), zero_z3(), mb1_squared()]
}

/// The discrete space on two points `p`, `q`; opens `∅, {p}, {q}, {p,q}`.
pub fn two_point_space() -> FiniteSpace {
    FiniteSpace::discrete(vec!["p".to_string(), "q".to_string()])
}

/// The constant Z3-valued sheaf on [`two_point_space`].
pub fn z3_two_point_sheaf() -> TriadicSheaf {
    let mut f = TriadicSheaf::functions_into(two_point_space(), Arc::new(mz3()), 4096).expect("sheaf");
    f.name = "Z3_two_points".to_string();
    f
}
