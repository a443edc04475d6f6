use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation `{0}`")]
    InvalidPermutation(String),

    #[error("invalid Hessenberg function `{0}`")]
    InvalidHessenberg(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={n}")]
    OutOfRange { index: usize, n: usize },

    #[error("invalid transposition ({0},{1}): need 1 <= i < j <= n")]
    InvalidTransposition(usize, usize),

    #[error("{0} is not below {1}")]
    NotComparable(String, String),

    #[error("{0} is not a vertex of the induced subgraph")]
    NotFixedPoint(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown associated pattern `{0}`")]
    UnknownPattern(String),

    #[error("unknown verification id `{0}`")]
    UnknownTheorem(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    /// A statement asserted by construction did not hold.
    #[error("internal invariant failed: {0}")]
    Invariant(String),

    #[error("n = {0} is too large for table-driven sweeps")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
