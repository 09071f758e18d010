use thiserror::Error;

/// Errors raised by the arithmetic and construction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: i64, right: i64 },
    #[error("order violation: {0}")]
    OrderViolation(String),
    #[error("residue present: coefficient of t^-1 is nonzero")]
    ResiduePresent,
    #[error("integrality failure at degree {degree}: {detail}")]
    IntegralityFailure { degree: i64, detail: String },
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, SigmaError>;
