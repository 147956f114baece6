use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero substituted into x{var} which has a negative exponent")]
    ZeroToNegativePower { var: usize },
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
