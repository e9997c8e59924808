use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("backend unsupported: {0}")]
    BackendUnsupported(String),
    #[error("invalid conjugation: {0}")]
    InvalidConjugation(String),
    #[error("invalid real form: {0}")]
    InvalidRealForm(String),
    #[error("chart undefined at t={0}")]
    ChartUndefined(f64),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("weight 0 has no super weight space; use the trivial representation or pi_minus")]
    UseTrivialOrPiMinus,
    #[error("not in G: {0}")]
    NotInG(String),
    #[error("undersampled: {0}")]
    Undersampled(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
