use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar is not invertible: {0}")]
    Invertibility(String),

    #[error("evaluation failed: {0}")]
    Eval(String),

    #[error("operator is not invertible as a K-monomial: {0}")]
    NonInvertible(String),

    #[error("algebra mode mismatch: {0} vs {1}")]
    ModeMismatch(String, String),

    #[error("unknown realization {0:?}")]
    UnknownRealization(String),

    #[error("operator matrix is not diagonal: {0}")]
    NonDiagonal(String),

    #[error("zero eigenvalue at basis index {0} inside the safe subspace")]
    SingularDiagonal(usize),

    #[error("dimension {dim} too small for raising excess {excess}")]
    DimensionTooSmall { dim: usize, excess: usize },

    #[error("representation mismatch: {0}")]
    Representation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },
}
