use exact_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("skew-symmetrizer entry exceeds the search bound")]
    SymmetrizerTooLarge,
    #[error("diagonal entries must be positive")]
    NonPositiveDiagonal,
    #[error("sizes differ: {0}")]
    DimensionMismatch(String),
    #[error("exchange at position {position} is not a Laurent polynomial: {source}")]
    LaurentViolation {
        position: usize,
        #[source]
        source: AlgebraError,
    },
    #[error("evaluation failed: {0}")]
    Evaluation(AlgebraError),
    #[error("mismatch at word {word:?}: expected {expected}, got {got}")]
    Mismatch {
        word: Vec<usize>,
        expected: String,
        got: String,
    },
    #[error("bad seed record: {0}")]
    BadRecord(String),
}
