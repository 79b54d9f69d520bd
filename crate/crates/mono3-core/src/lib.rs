//! Arithmetic, holomorphic extension and monogenicity verifiers for the
//! three-dimensional commutative algebra 𝔸₃ = ℂ[ρ]/(ρ³).
//!
//! The crate is organised in layers:
//!
//! * [`algebra`] — elements a + bρ + cρ² with exact structural arithmetic,
//!   inversion away from the radical and the resolvent (t·1 − z)⁻¹;
//! * [`subspace`] — real subspaces E ⊂ 𝔸₃ on which verification runs:
//!   basis validation, the radical plane, direction sets and the harmonic
//!   family e₁² + e₂² + e₃² = 0;
//! * [`holo`] — a small expression language for holomorphic functions with
//!   one evaluator shared between ℂ and 𝔸₃, so that restricting the algebra
//!   evaluation to ℂ·1 reproduces complex evaluation bit for bit;
//! * [`extension`] — the principal extension Ext(F) (and its Cauchy-integral
//!   form), monogenic functions Φ = Ext(F₀) + ρ·Ext(F₁) + ρ²·Ext(F₂) and
//!   their Gâteaux derivative;
//! * [`verify`] — numerical checks: directional difference quotients with
//!   Richardson extrapolation, the weakened differentiability condition,
//!   a Lorch-style remainder bound, a finite-difference Laplacian and a
//!   seeded grid driver, plus builtin counterexamples.

pub mod algebra;
pub mod extension;
pub mod holo;
mod linalg;
pub mod subspace;
pub mod verify;

pub use algebra::{A3, AlgebraError, Complex, INVERTIBILITY_FLOOR};
pub use extension::{
    CONTOUR_MARGIN, Contour, EvalMode, ExtensionError, MonogenicFn, cauchy_extension,
    eval_monogenic, gateaux_of_extension, principal_extension,
};
pub use holo::{HoloError, HoloFn};
pub use subspace::{
    BasisFile, DirectionError, DirectionSet, NON_COLLINEARITY_THRESHOLD, Subspace, SubspaceError,
};
pub use verify::{
    CheckReport, DEFAULT_DELTA0, DEFAULT_LEVELS, DEFAULT_TOL, DirectionHistory, GridSummary,
    SampledFn, Verdict, VerifyError, check_kprime, check_laplace, check_lorch,
    directional_derivative, grid_verify,
};
