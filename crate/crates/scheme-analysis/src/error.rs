use coevent_engine::EngineError;
use measure_core::MeasureError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("partition has {size} blocks, cap {cap}")]
    SpaceTooLarge { size: usize, cap: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}
