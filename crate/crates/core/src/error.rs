use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ideal pattern: {0}")]
    InvalidPattern(&'static str),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} is below 3; no auxiliary index exists")]
    DegreeTooSmall(usize),
    #[error("index ({0},{1}) out of range for degree {2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("row and column index coincide: ({0},{0})")]
    SameIndex(usize),
    #[error("transvections at opposite positions ({0},{1}) and ({1},{0}) have no closed commutator form")]
    OppositePositions(usize, usize),
    #[error("parameter {what} is not in ideal {ideal}")]
    SortViolation { what: &'static str, ideal: &'static str },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(&'static str),
    #[error("invalid ring table: {0}")]
    InvalidRing(alloc::string::String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(alloc::string::String),
    #[error("unknown ring `{0}`")]
    UnknownRing(alloc::string::String),
    #[error("residual parameter degree {0} exceeds the guard {1}")]
    DegreeCap(usize, usize),
    #[error("residual size of {0} terms exceeds the guard {1}")]
    SizeCap(usize, usize),
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
}
