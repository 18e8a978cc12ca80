use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("element is not a unit (degree-0 coefficient is zero)")]
    NonUnit,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{quantity} evaluated to the non-integer {value}")]
    NonIntegral { quantity: String, value: BigRational },

    #[error("exact-sequence constraints are inconsistent: {0}")]
    Inconsistent(String),

    #[error("propagation did not reach a fixed point after {0} sweeps")]
    NoFixedPoint(usize),

    #[error("{what} is not determined by the registered facts (interval {interval})")]
    Underdetermined { what: String, interval: String },

    #[error("zero divisor encountered in quotient ring; resample the point")]
    ZeroDivisor,

    #[error("point sampling failed after {0} attempts")]
    SamplingExhausted(usize),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("negative dimension {value} for {quantity}")]
    NegativeDimension { quantity: String, value: BigInt },

    #[error("malformed input: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
