use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PksError {
    #[error("cannot parse ray {0:?}")]
    BadRay(String),
    #[error("{0:?} is not a Peres ray")]
    NotPeresRay(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
}
