use thiserror::Error;

use crate::partition::Partition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not nilpotent of order {m}")]
    NotNilpotent { m: usize },

    #[error("partitions {0} and {1} have different weights")]
    UnequalWeight(Partition, Partition),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{0} is not an odd prime below 2^63")]
    InvalidPrime(u64),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("the zero module has no endomorphism ring to test")]
    ZeroModule,

    #[error("operation requires characteristic zero, got characteristic {0}")]
    UnsupportedField(u64),

    #[error("dimension vectors differ: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("exact sequence failed to verify: {0}")]
    ExactnessFailure(String),

    #[error("no escape move for non-listed indecomposable pair {0}")]
    NoEscapeMove(String),
}
