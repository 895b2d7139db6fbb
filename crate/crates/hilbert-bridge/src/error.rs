use measure_core::MeasureError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BridgeError {
    #[error("invalid Hilbert spec: {0}")]
    InvalidSpec(String),
    #[error("history index {index} out of range at step {step}")]
    IndexOutOfRange { step: usize, index: usize },
    #[error("history has {found} steps, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("{0} fine-grained histories exceed the limit of 64")]
    SpaceTooLarge(usize),
    #[error("slit coefficient {0} is zero")]
    ZeroCoefficient(usize),
    #[error("need at least two slit coefficients")]
    TooFewCoefficients,
    #[error("no solution for m = {0}")]
    NoSolution(usize),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}
