use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("duplicate point {0:?}")]
    DuplicatePoint(Vec<i64>),

    #[error("coordinate {value} exceeds the safe band |c| <= {band}")]
    CoordinateOverflow { value: i128, band: i64 },

    #[error("instance too large: {what} is {actual}, limit {limit}")]
    InstanceTooLarge {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("work cap exceeded: {needed} elementary operations, cap {cap}")]
    WorkCapExceeded { needed: u128, cap: u64 },

    #[error("count overflow while accumulating representation counts")]
    CountOverflow,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid value {value} at {point:?}: function values must be finite and nonnegative")]
    InvalidValue { point: Vec<i64>, value: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("exponent ordering violated: {0}")]
    ExponentOrder(String),

    #[error("no sign change of the residual on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
