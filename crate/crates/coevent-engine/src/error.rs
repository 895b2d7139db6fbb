use measure_core::MeasureError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("the zero map is not a co-event")]
    ZeroMap,
    #[error("co-event and event belong to different sample spaces")]
    SpaceMismatch,
    #[error("search space too large: {what} is {size}, cap {cap}")]
    SpaceTooLarge { what: &'static str, size: usize, cap: usize },
    #[error("operation needs an exact-mode theory")]
    NotExactMode,
    #[error("cannot parse co-event {0:?}")]
    Parse(String),
    #[error("unknown or unsupported scheme {0:?}")]
    UnsupportedScheme(String),
    #[error("polynomial degree must be at least 1")]
    BadDegree,
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

impl EngineError {
    pub(crate) fn too_large(what: &'static str, size: usize, cap: usize) -> Self {
        EngineError::SpaceTooLarge { what, size, cap }
    }
}
