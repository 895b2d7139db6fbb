use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("{what} has size {size}, cap is {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("unitary for vertex {0} is not unitary")]
    NotUnitary(usize),
    #[error("collapse parameter X = {0} is outside [0, 1]")]
    BadParameter(f64),
    #[error("initial state has dimension {got}, expected {expected}")]
    BadState { got: usize, expected: usize },
    #[error("initial state has norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("invalid labelling: {0}")]
    BadLabelling(String),
    #[error("cannot read lattice spec: {0}")]
    Parse(String),
}
