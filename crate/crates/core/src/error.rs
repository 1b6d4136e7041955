use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation requires a field, got {0}")]
    RingNotField(String),
    #[error("operation requires the integers, got {0}")]
    RingNotIntegers(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("weight {0:?} is not in Lambda({1}, {2})")]
    WeightOutOfRange(Vec<usize>, usize, usize),
    #[error("operation requires n >= d (n = {n}, d = {d})")]
    RequiresNGeqD { n: usize, d: usize },
    #[error("operation requires a field coefficient ring")]
    RequiresField,
    #[error("complex is not exact: {0}")]
    ExactnessFailure(String),
    #[error("module invariant violated: {0}")]
    InvariantViolation(String),
    #[error("integral cokernel has torsion {0:?}")]
    Torsion(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
