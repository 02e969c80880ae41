use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vectors must have at least one entry")]
    EmptyVector,
    #[error("a frame needs at least one vector")]
    EmptyFrame,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("need at least {needed} vectors, got {got}")]
    TooFewVectors { needed: usize, got: usize },
    #[error("family is linearly dependent (rank {rank} < {count})")]
    DependentFamily { rank: usize, count: usize },
    #[error("family is not a basis")]
    NotABasis,
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("index set must be nonempty")]
    EmptyIndexSet,
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("subspace has dimension zero")]
    ZeroDimensional,
    #[error("pair is not classifiable: coordinate {coordinate} fits neither a nor 1/a")]
    NotClassifiable { coordinate: usize },
    #[error("x+y and x-y weakly have the same phase; the pair cannot seed a failing frame")]
    PairNotBad,
    #[error("gave up after {0} rejected samples")]
    RetryLimit(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
