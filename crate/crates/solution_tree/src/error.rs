use thiserror::Error;

use crate::Triple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("{0} is not a solution")]
    NotASolution(Triple),
    #[error("mutation of {triple} at position {position} gives a non-positive value")]
    NonPositiveResult { triple: Triple, position: u8 },
    #[error("division form of the mutation of {triple} at position {position} is not exact")]
    NotDivisible { triple: Triple, position: u8 },
    #[error("position {0} is outside 1..=3")]
    PositionOutOfRange(u8),
    #[error("{0} does not have the shape (1, b, c)")]
    WrongShape(Triple),
    #[error("{0} has a tied maximum below the root chain")]
    TiedMaximum(Triple),
    #[error("descent from {0} did not decrease the maximum")]
    DescentStalled(Triple),
}
