use thiserror::Error;

/// Errors raised by simplex construction and the geometric operations built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point has no coordinates")]
    EmptyPoint,

    #[error("non-finite coordinate {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "degenerate simplex: smallest singular value {smallest:e} below threshold {threshold:e}"
    )]
    Degenerate { smallest: f64, threshold: f64 },

    #[error("too few points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("negative radicand {value:e} (scale {scale:e})")]
    NegativeRadicand { value: f64, scale: f64 },

    #[error("simplex is not regular: relative edge spread {spread:e} exceeds {tolerance:e}")]
    NotRegular { spread: f64, tolerance: f64 },

    #[error("empty input")]
    EmptyInput,

    #[error("every ({size})-point subset is degenerate")]
    AllDegenerate { size: usize },

    #[error("simplex is not full-dimensional: m = {m}, n = {n}")]
    NotFullDimensional { m: usize, n: usize },

    #[error("point count {count} exceeds enumeration cap {cap}")]
    CapExceeded { count: usize, cap: usize },

    #[error("function evaluation failed at {point:?}: non-finite value")]
    EvaluationFailure { point: Vec<f64> },

    #[error("no sign criterion satisfied at depth {depth}")]
    NoSignCriterion { depth: usize },

    #[error("linear system is singular")]
    Singular,
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
