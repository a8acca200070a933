use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {actual}")]
    RankMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("not a permutation of 1..={n}: {images:?}")]
    NotPermutation { n: usize, images: Vec<usize> },

    #[error("subset {0} is not special (contains consecutive indices)")]
    NotSpecial(String),

    #[error("{0} is not a minimal coset representative for K = {1}")]
    NotMinimalRep(String, String),

    #[error("K = {k} is not contained in I = {i}")]
    SubsetViolation { k: String, i: String },

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("matrix size mismatch: {0}")]
    SizeMismatch(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("prime {p} must exceed n = {n}")]
    PrimeTooSmall { p: u64, n: usize },

    #[error("n = {n} exceeds the cap {max}")]
    CapExceeded { n: usize, max: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
