use thiserror::Error;

/// Errors surfaced by the library; internal invariant breakage panics instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("entries must be non-decreasing: {0:?}")]
    NotMonotone(Vec<u32>),
    #[error("a vertex must have at least one entry")]
    EmptyVertex,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("finite set must be non-empty")]
    EmptySet,
    #[error("rank indices are 1-based; got 0")]
    ZeroRank,
    #[error("cutoff precedes the anchor vertex")]
    CutoffBeforeAnchor,
    #[error("theta must satisfy 0 < theta < 1, got {0}")]
    ThetaOutOfRange(String),
    #[error("d must be at least 1")]
    BadBranching,
    #[error("k must be at least 1")]
    BadDimension,
    #[error("p must satisfy p >= 1, got {0}")]
    BadExponent(f64),
    #[error("stem length must be strictly less than the ambient dimension")]
    BadStem,
    #[error("support lies outside the requested trace subspace")]
    OutsideTrace,
    #[error("functional generation box too large: {got} vertices (limit {limit})")]
    BoxTooLarge { got: usize, limit: usize },
    #[error("functional generation box does not cover the vector support")]
    BoxTooSmall,
    #[error("generation depth {got} too large (limit {limit})")]
    DepthTooLarge { got: usize, limit: usize },
    #[error("prescribed maxima must be strictly increasing")]
    NotIncreasing,
    #[error("d*theta must exceed 1 for this check")]
    SubcriticalParams,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("json: {0}")]
    Json(String),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
