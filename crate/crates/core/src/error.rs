use thiserror::Error;

pub type Result<T> = std::result::Result<T, FracError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FracError {
    #[error("{op}: order alpha={alpha} outside admissible range {range}")]
    InvalidOrder {
        op: &'static str,
        alpha: f64,
        range: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid too small: {op} needs at least {needed} intervals, got {got}")]
    GridTooSmall {
        op: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("non-finite sample {value} at node {index} (x={x})")]
    Sampling { index: usize, x: f64, value: f64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Series did not reach the requested tolerance within the term budget.
    #[error("series did not converge after {terms} terms (partial sum {partial})")]
    Precision { partial: f64, terms: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "Feller-Takayasu diamond violated: |theta|={theta} exceeds min(alpha, 2-alpha)={bound} at alpha={alpha}"
    )]
    DiamondViolation { alpha: f64, theta: f64, bound: f64 },

    #[error("singular time step: |omega_0/tau^alpha - lambda| = {0:e}")]
    SingularStep(f64),

    #[error("sample is not periodic: |f(b)-f(a)| = {0:e}")]
    NonPeriodic(f64),

    #[error("boundary values of the initial condition must vanish, found {0:e}")]
    NonzeroBoundary(f64),

    #[error("kernel violates {0}")]
    Kernel(String),

    #[error("zero total mass")]
    ZeroMass,
}
