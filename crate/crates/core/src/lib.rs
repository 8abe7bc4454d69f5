//! Exact symbolic engine for solenoidal Lie algebras `W_μ`.
//!
//! `μ` is kept symbolic throughout: `μ·r` is a nonzero linear polynomial for
//! every `r ≠ 0`, which realizes genericity formally. Coefficients live in
//! `ℚ(μ1, …, μn, α, β)` ([`scalar::Scalar`]).

pub mod awmod;
pub mod cover;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod linear;
pub mod modules;
pub mod random;
pub mod report;
pub mod scalar;
pub mod solalg;
pub mod suites;
pub mod uea;

pub use error::{Error, Result};
pub use lattice::LatticePoint;
pub use report::{Check, NamedRep, Report, RunConfig, Status, Suite};
pub use scalar::{Scalar, Var};
pub use suites::run_suite;
