use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// `d_out * d_in` had nonzero entries, so the pair is not a complex.
    #[error("not a complex: composite of differentials has {0} nonzero entries")]
    NotAComplex(usize),

    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("variable count mismatch: {0} vs {1}")]
    Nvars(usize, usize),

    #[error("expected a derivation (polyvector of degree 1), got {0}")]
    NotDerivation(String),

    #[error("inconsistent linear data: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("outside the sub-coalgebra Xi(A): {0}")]
    OutsideXi(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
