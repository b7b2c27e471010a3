use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("unsupported dimension k={0} (supported range is 2..=16)")]
    UnsupportedDimension(u32),

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
