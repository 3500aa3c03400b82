//! Exact symbolic computation on universal fine compactified Jacobians.
//!
//! The crate is organised by subsystem:
//!
//! - [`graphs`]: prestable dual graphs, vine graphs, subdivision and contraction.
//! - [`stability`]: the Kass–Pagani stability family `φ(z)`, stable multidegrees
//!   and the wall-crossing invariant `δ_{g₁}(z)`.
//! - [`wittencalc`]: ψ/κ intersection numbers via the DVV recursion.
//! - [`tautalg`]: decorated tautological classes, perversity bookkeeping, the
//!   pushforward rule catalog and the uniDR relation templates.
//! - [`fourier`]: the equational calculus of graded Fourier correspondences.
//! - [`obstruct`]: the divisor-isomorphism constraint system and its exact
//!   SAT/UNSAT decision.
//! - [`acceptance`]: the acceptance criteria, runnable as one deterministic suite.
//!
//! All arithmetic is exact ([`Q`] is an arbitrary-precision rational); nothing
//! in the crate uses floating point.

pub mod acceptance;
pub mod error;
pub mod exec;
pub mod fourier;
pub mod graphs;
pub mod obstruct;
pub mod rational;
pub mod stability;
pub mod tautalg;
pub mod wittencalc;

pub use error::{Error, Result};
pub use exec::Exec;
pub use rational::Q;

/// Tool version reported by every command result.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
