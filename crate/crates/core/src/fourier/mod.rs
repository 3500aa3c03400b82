//! Equational calculus for graded Fourier correspondences.
//!
//! Words in the Fourier components `F_i: V → M`, their inverses
//! `G_j: M → V`, the cup product and the reduced convolution form a free
//! ℚ-algebra ([`word`]). Pluggable vanishing axioms, the resolution of the
//! identity and a bounded search turn it into a semi-decision procedure for
//! identities whose proofs replay step by step ([`rewrite`]). The [`catalog`]
//! collects the standard identities: orthogonal and semi-orthogonal
//! idempotents, truncation vanishing and factoring, Fourier stability,
//! multiplicativity and the transport of the graded cup product to the
//! reduced convolution.
//!
//! Indices are restricted to the band `0..=2g`; `g` is a concrete integer.

pub mod catalog;
pub mod rewrite;
pub mod word;

pub use catalog::{
    catalog, catalog_run, evaluate_goal, goal, graded_ring_transport, CatalogReport, Goal, GoalOutcome, Theory,
    TransportEntry, TransportReport, DEFAULT_DEPTH,
};
pub use rewrite::{
    apply_step, expand, normalize, replay, verify, verify_identity, Anchor, AxiomSet, Axioms, Identity, Policy,
    RewriteCtx, Step, Trace, Verdict,
};
pub use word::{Alg, Base, BinOp, CorrExpr, Gen, Obj, Path, Side, Signature, Ty, Word};
