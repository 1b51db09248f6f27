use thiserror::Error;

/// Errors raised by the immanon library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{quantity} = {value} is outside the supported range {min}..={max}")]
    OutOfRange {
        quantity: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("{quantity} = {value} is outside the allowed interval [{min}, {max}]")]
    ValueOutOfRange {
        quantity: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("diagonal entry {index} equals {value}, expected 1")]
    DiagonalNotUnit { index: usize, value: String },

    #[error("matrix is not positive semi-definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("seed vector {index} is not normalized (norm {norm})")]
    NotNormalized { index: usize, norm: f64 },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("state dimension {dimension} exceeds the dense-state limit {limit}")]
    StateTooLarge { dimension: u128, limit: usize },

    #[error("seed-dependence probe is undefined for one-dimensional representations")]
    OneDimensionalRepresentation,

    #[error("invalid occupation vector: {0}")]
    InvalidOccupation(String),

    #[error(
        "projection of eta = {eta} by lambda = {lambda} has norm {norm:e} although eta is not majorized by lambda"
    )]
    PauliViolation { lambda: String, eta: String, norm: f64 },

    #[error("result has non-negligible imaginary part {imag:e} (real part {real:e})")]
    NonRealResult { real: f64, imag: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
