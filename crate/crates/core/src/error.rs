use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("{what} must be positive")]
    NonPositive { what: &'static str },

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),

    #[error("order 2^{0} is beyond the supported range")]
    TooLarge(u32),

    #[error("{value} is not in the domain of {map}")]
    OutOfDomain { map: &'static str, value: u64 },

    #[error("{what}: {detail} is not an integer")]
    NonIntegral { what: &'static str, detail: String },

    #[error("odd condition fails for the pair ({0}, {1})")]
    OddConditionFailed(u64, u64),

    #[error("map tables are not injective or leave Z_{t}")]
    BadMapTable { t: u64 },

    #[error("map pair is for order {have}, needed {want}")]
    MapOrderMismatch { have: u64, want: u64 },

    #[error("{n} columns exceed rho({t}) = {rho}")]
    TooManyColumns { n: usize, t: u64, rho: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cell ({row}, {col}) is not a single monomial")]
    NotMonomial { row: usize, col: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema violation at {field}: {message}")]
    Schema { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
