use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid gap set: {0}")]
    InvalidGapSet(String),

    #[error("step size underflow at t = {t}: h = {h:e} (problem too stiff for the explicit integrator)")]
    StepUnderflow { t: f64, h: f64 },

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("no convergence at depth {depth}: last iterates {last} and {previous}")]
    Convergence {
        depth: usize,
        last: Complex64,
        previous: Complex64,
    },

    #[error("Dirichlet data extraction failed in gap {gap}: {reason}")]
    DataExtraction { gap: usize, reason: String },

    #[error("unsupported topology: {0}")]
    UnsupportedTopology(&'static str),

    #[error("ill-conditioned geometry system (condition number {condition:e})")]
    Geometry { condition: f64 },

    #[error("missing dependency: {0}")]
    MissingDependency(&'static str),

    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("angle {index} failed to increase during the step ending at t = {t}")]
    Monotonicity { index: usize, t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
