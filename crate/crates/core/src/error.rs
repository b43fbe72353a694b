use thiserror::Error;

/// Errors produced while building operators, schedules, and analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {len} entries, expected {dim}x{dim}")]
    NotSquare { dim: usize, len: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("site {site} is out of range 1..={n}")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("matrix is not Hermitian (max |H - H^dagger| entry = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (||U^dagger U - I|| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("Hermitian eigendecomposition failed to converge")]
    EigenDecomposition,

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid control parameters: {0}")]
    InvalidControl(String),

    #[error("invalid imperfection model: {0}")]
    InvalidModel(String),

    #[error("invalid segment {index}: {reason}")]
    InvalidSegment { index: usize, reason: String },

    #[error("active sites must form a contiguous range")]
    NonContiguous,

    #[error("target cannot be realized with the available controls: {0}")]
    NotExpressible(String),

    #[error("physical pulse amplitude {gamma_max} is below the minimum {min}")]
    PulseTooWeak { gamma_max: f64, min: f64 },

    #[error("the simplified bound requires a uniform chain")]
    NonUniformChain,

    #[error("{0} is zero; the characteristic time is unbounded")]
    ZeroDenominator(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
