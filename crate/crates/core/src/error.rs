use thiserror::Error;

/// Errors raised by the algebraic routines.
///
/// Mathematical check failures (a map that is not an n-homomorphism, a
/// series with no Padé form) are errors only where an operation cannot
/// produce its result; predicates return reports with witnesses instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("series has a nonzero constant term")]
    NonZeroConstantTerm,

    #[error("element is not invertible")]
    SingularElement,

    #[error("size bound exceeded: {required} > {bound}")]
    SizeBoundExceeded { required: usize, bound: usize },

    #[error("subspace is not closed under multiplication: {0}")]
    NotClosed(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("psi table too shallow: need index {needed}, have up to {available}")]
    InsufficientDepth { needed: usize, available: usize },

    #[error("no rational form of type {p}|{q} at order {order}")]
    NoSolution { p: usize, q: usize, order: usize },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("not an {n}-homomorphism: {reason}")]
    NotNHom { n: usize, reason: String },

    #[error("invalid representation: {0}")]
    InvalidRep(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
