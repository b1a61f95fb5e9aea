use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected a nonnegative integer, got {0}")]
    Negative(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid base {0}: must be at least 2")]
    InvalidBase(u64),

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u64 },

    #[error("precision must be at least 1")]
    ZeroPrecision,

    #[error("need {needed} digits but only {available} are known")]
    InsufficientPrecision { needed: usize, available: usize },

    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: String, k: String },

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("modulus {0} is not irreducible")]
    Reducible(String),

    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),

    #[error("field mismatch")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("enumeration of {requested} items exceeds budget {budget}")]
    BudgetExceeded { requested: u128, budget: u64 },

    #[error("index {index} needs digit position {position} but basis stops at {max}")]
    IndexOverflow { index: u64, position: usize, max: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("value is not integral: {0}")]
    NotIntegral(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("ring mismatch")]
    RingMismatch,

    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("permutation maps index {index} to {image}, outside [0, {bound}]")]
    WindowViolation { index: u64, image: u64, bound: u64 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("order {order} exceeds horizon {horizon}")]
    OrderExceedsHorizon { order: usize, horizon: usize },

    #[error("value {0} has a denominator divisible by p")]
    NotPIntegral(String),

    #[error("parse error: {0}")]
    Parse(String),
}
