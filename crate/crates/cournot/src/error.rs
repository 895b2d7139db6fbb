use coevent_engine::EngineError;
use measure_core::MeasureError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CournotError {
    #[error("invalid coin model: {0}")]
    InvalidModel(String),
    #[error("head count {heads} outside 0..={n}")]
    OutOfRange { heads: usize, n: usize },
    #[error("the counting formulas need p = 1/2")]
    NotUniform,
    #[error("events are not pairwise disjoint")]
    NotDisjoint,
    #[error("bad weights: {0}")]
    BadWeights(String),
    #[error("co-event values an event of measure below {0}")]
    NotApproximatelyPreclusive(String),
    #[error("{what} is {size}, cap {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}
