use thiserror::Error;

/// Errors raised by validation and by shape-checked operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a probability vector: {0}")]
    NotProbVector(String),

    #[error("not a stochastic matrix: {0}")]
    NotStochastic(String),

    #[error("not a bistochastic matrix: {0}")]
    NotBistochastic(String),

    #[error("matrix is not unitary (max defect {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (max defect {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (found {0})")]
    InvalidTrace(f64),

    #[error("eigenvalue below tolerance: {0:e}")]
    NotPositive(f64),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("no built-in measurement unitary for dimension {0}; supply one explicitly")]
    UnsupportedDimension(usize),

    #[error("inconsistent portrait pair: first-bin mass {second} is below {first}")]
    InconsistentPortrait { first: f64, second: f64 },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
