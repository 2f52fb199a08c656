use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} outside [0,1] in {context}")]
    OutOfUnitInterval { value: f64, context: &'static str },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dataset: {0}")]
    Dataset(String),

    #[error("positive region undefined: no out-of-class instances")]
    SingleClass,

    #[error("measure: {0}")]
    Measure(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors raised while validating inputs (files, flags, shapes),
    /// as opposed to failures of a well-posed computation.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::SingleClass | Error::Measure(_))
    }
}
