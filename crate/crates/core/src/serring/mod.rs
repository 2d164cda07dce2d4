//! Exact truncated model of `R = k[[t^S]]`, a monomial ideal `I ⊆ R` and the
//! duplication `D = R⋈I ⊆ k((t))²`.
//!
//! Modules are [`ModuleWindow`]s: subspaces pinched between two lattices and
//! stored modulo the inner one. Colons are nullspaces of linear constraint
//! systems over the coefficient field. Every window is derived from proven
//! order bounds, so results are exact; a model-wide cap only limits how
//! large those windows may grow.

mod checks;
mod laurent;
mod model;
mod module;

use thiserror::Error;

use crate::numsgp::SemigroupError;

pub use checks::{
    adjointness_dimension_check, divisorial_check_dup, endomorphism_excess, endomorphism_witness, pi_basis_check,
    random_ideal_generators, sigma_bijectivity_check, sigma_linearity_check, sigma_matrix, SigmaMatrix,
};
pub use laurent::Laurent;
pub use model::{pair_mul, regular_test, DupModel, HomDecomposition, PairElement};
pub use module::{mul_componentwise, unit_element, Element, ModuleWindow, Window};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerError {
    #[error("ideal is not contained in S; shift it by {shift} first")]
    NotIntegral { shift: i64 },
    #[error("ideal is trivial (zero or the unit ideal)")]
    TrivialIdeal,
    #[error("window too small: need {needed}, cap is {cap}")]
    WindowTooSmall { needed: Window, cap: Window },
    #[error("module is zero")]
    ZeroModule,
    #[error("no regular generator")]
    NoRegularGenerator,
    #[error("indeterminate below precision {precision}; increase window")]
    Indeterminate { precision: i64 },
    #[error("precision underflow: product known to no exponent")]
    PrecisionUnderflow,
    #[error("precision unsound: {0}")]
    PrecisionUnsound(String),
    #[error("module is not contained in the duplication")]
    NotInRing,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

pub type Result<T> = std::result::Result<T, SerError>;
