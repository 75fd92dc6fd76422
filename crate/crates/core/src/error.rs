use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("component outside degree window: {0}")]
    WindowOverflow(String),
    #[error("arity overflow: {0}")]
    ArityOverflow(String),
    #[error("enumeration over an infinite field is refused")]
    InfiniteField,
    #[error("enumeration cap exceeded: estimate {estimate} > cap {cap}")]
    CapExceeded { estimate: u128, cap: u128 },
    #[error("level {level} is beyond the stored bound {bound}")]
    LevelOverflow { level: usize, bound: usize },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
