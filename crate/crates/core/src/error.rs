use thiserror::Error;

/// Everything that can go wrong in the library, from malformed input to
/// numerically degenerate configurations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("polynomials live in different variable sets")]
    VariableMismatch,

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("signature must be strictly decreasing: {0}")]
    Degenerate(String),

    #[error("interlacing violated: {0}")]
    Interlacing(String),

    #[error("Macdonald eigenvalues collide for {0}; choose different (q, t)")]
    EigenvalueCollision(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
