use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("sample space must contain at least one history")]
    EmptySpace,
    #[error("sample space of {size} histories exceeds the cap of {cap}")]
    SpaceTooLarge { size: usize, cap: usize },
    #[error("duplicate history label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown history label {0:?}")]
    UnknownLabel(String),
    #[error("event mask {bits:#x} has bits outside a space of {size} histories")]
    EventOutOfRange { bits: u64, size: usize },
    #[error("matrix must be {expected}x{expected}, found {found} entries")]
    BadDimension { expected: usize, found: usize },
    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("diagonal entry {0} is negative")]
    NegativeDiagonal(usize),
    #[error("measure has imaginary residual {0:e}")]
    ImaginaryResidual(f64),
    #[error("events are not pairwise disjoint")]
    NotDisjoint,
    #[error("no level up to {0} makes the interference terms vanish")]
    Undetermined(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cannot parse {0:?} as a rational")]
    BadRational(String),
    #[error("malformed system file: {0}")]
    BadSystemFile(String),
    #[error("unknown system {0:?}")]
    UnknownSystem(String),
}
