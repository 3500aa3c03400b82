//! Decorated tautological classes on the universal fine compactified
//! Jacobian `π: J̄_{g,1} → M̄_{g,1}`, their perversity, the pushforward rule
//! catalog, and the uniDR relation templates.
//!
//! - [`base`]: classes on `M̄_{g,1}` (ψ, κ, vine boundary classes, opaque DR
//!   coefficients) and the forgetful pushforward to `M̄_g`.
//! - [`expr`]: divisors `Θ, κ_{0,1}, ξ_i, ψ_i`, strata and [`TautExpr`].
//! - [`push`]: `π_*` as an explicit catalog, and the coefficients `a_{g₁}(φ)`.
//! - [`relations`]: relation templates with stability-driven pruning, and the
//!   derivation of `π_*(Θ^{g−1}κ³)` from them.

pub mod base;
pub mod expr;
pub mod log;
pub mod push;
pub mod relations;

pub use base::{dr1_b2_interior, dr_combo, forgetful_pushforward, kappa_tilde_1, BaseAtom, BaseExpr, BaseMonomial};
pub use expr::{perversity, DecoratedTerm, DivisorKind, Monomial, PicDivisor, Stratum, TautExpr};
pub use log::{JustificationEntry, JustificationLog};
pub use push::{a_coeff, a_coeff_sum, pushforward, pushforward_traced, PushContext};
pub use relations::{
    derive_kappa3_pushforward, instantiate_relation, InstantiatedRelation, RelationContext, RelationId,
};
