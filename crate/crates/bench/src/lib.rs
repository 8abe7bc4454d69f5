//! Fixed workloads shared by the criterion benches.

use solenoid_core::awmod::{aw_construct, fit_from_module, samples};
use solenoid_core::cover::weight_space_rank;
use solenoid_core::lattice::LatticePoint;
use solenoid_core::modules::{min_annihilation_order, BetaMode, TensorModule};
use solenoid_core::uea::{pbw_normalize, verify_omega_identity};

/// Straightens a reversed word of four generators; returns the term count.
pub fn pbw_reversed_word(n: usize) -> usize {
    let word: Vec<LatticePoint> = (0..4).rev().map(|i| LatticePoint::new((0..n).map(|j| i - j as i64))).collect();
    pbw_normalize(&word).num_terms()
}

/// One instance of the order-raising differentiator identity with `r = 2`.
pub fn omega_identity(n: usize) -> bool {
    let p = |a: i64| LatticePoint::new((0..n).map(|j| a - j as i64));
    let rep = verify_omega_identity(2, &p(1), &p(-1), &p(2), &p(0), &p(1)).expect("r >= 2");
    rep.equal
}

pub fn annihilation_order(n: usize) -> u32 {
    let p = |a: i64| LatticePoint::new((0..n).map(|j| a + j as i64));
    min_annihilation_order(&TensorModule::generic(n), &p(1), &p(-1), &p(2), 5)
        .expect("generic tensor modules have finite order")
        .order
}

pub fn cover_rank(n: usize) -> usize {
    weight_space_rank(&TensorModule::generic(n), &LatticePoint::zero(n), 3, 2, 6)
        .expect("rank stabilizes")
        .rank
}

pub fn fit_jordan3(n: usize) -> usize {
    let aw = aw_construct(&samples::jordan(n, 3), BetaMode::Generic);
    fit_from_module(&aw, 2).expect("fit succeeds").coefficients().len()
}

