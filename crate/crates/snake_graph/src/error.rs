use cluster_engine::ClusterError;
use exact_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnakeError {
    #[error("cannot parse arc: {0}")]
    Parse(String),
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("check failed: {0}")]
    Mismatch(String),
}
