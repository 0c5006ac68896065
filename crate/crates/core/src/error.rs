//! Error type shared across the toolkit.

use thiserror::Error;

/// Errors raised by metric evaluation, curvature operators, the geodesic
/// engine and the closed-form evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The metric determinant fell below the singularity threshold.
    #[error("metric is singular at the queried point (|det g| = {det:.3e})")]
    SingularMetric { det: f64 },

    /// An evaluator was asked for a derivative depth it does not advertise.
    #[error("evaluator supports exact derivatives up to order {supported}, order {required} required")]
    DerivativeUnsupported { required: usize, supported: usize },

    /// A point, velocity or matrix had the wrong dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The adaptive integrator could not satisfy the tolerance with h >= 1e-14.
    #[error("step size underflow at s = {s} (h = {h:.3e})")]
    StepSizeUnderflow { s: f64, h: f64 },

    /// The integrated state overflowed or became NaN.
    #[error("state became non-finite at s = {s}")]
    NonFiniteState { s: f64 },

    /// The integrator exhausted its step budget before reaching s_max.
    #[error("integration exceeded {max_steps} steps at s = {s}")]
    TooManySteps { s: f64, max_steps: usize },

    /// |xi3| is nonzero but too small for the trigonometric closed forms.
    #[error("|xi^3| = {xi3:.3e} lies in the ill-conditioned band (0, {threshold:.0e})")]
    IllConditioned { xi3: f64, threshold: f64 },

    /// A surface was sampled outside its parameter rectangle.
    #[error("parameter point (u, v) = ({u}, {v}) lies outside the surface domain")]
    DomainError { u: f64, v: f64 },

    /// A coordinate or direction was NaN or infinite.
    #[error("non-finite input value")]
    NonFiniteInput,

    /// An invalid run configuration (bad flag combination, malformed spec).
    #[error("invalid configuration: {0}")]
    ConfigError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
