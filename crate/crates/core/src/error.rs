use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0}: input is zero")]
    ZeroInput(&'static str),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("degree {degree} outside range [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("operation requires a field, got {0}")]
    NotAField(String),
    #[error("operation requires one variable, got {0}")]
    NotUnivariate(usize),
    #[error("characteristic mismatch: ring has characteristic {ring}, character field has {field}")]
    CharacteristicMismatch { ring: u64, field: u64 },
    #[error("rho must have {expected} entries, got {got}")]
    RhoLength { expected: usize, got: usize },
    #[error("rho is the zero vector")]
    ZeroRho,
    #[error("rho is not generic: {0}")]
    NonGenericRho(String),
    #[error("no generic rho in box [-{0}, {0}]; try a larger box")]
    GenericSearchExhausted(i64),
    #[error("ideal is zero: quotient has infinite rank over Z")]
    RankInfinite,
    #[error("generator index {index} out of range (have {count})")]
    GeneratorIndex { index: usize, count: usize },
    #[error("relator {index} is not killed by nu (image {image:?})")]
    NuNotBalanced { index: usize, image: Vec<i64> },
    #[error("no cokernel shortcut: {0}")]
    NoShortcut(String),
    #[error("field too large: {0} elements")]
    FieldTooLarge(u64),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Usage(String),
}
