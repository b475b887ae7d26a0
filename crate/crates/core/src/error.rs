use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable space mismatch: ({0}, {1}) vs ({2}, {3})")]
    ArityMismatch(usize, usize, usize, usize),

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("tropical evaluation needs a nonzero polynomial with positive coefficients")]
    NotSubtractionFree,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed triangulation: {0}")]
    MalformedTriangulation(String),

    #[error("unsupported flip: {0}")]
    UnsupportedFlip(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("matching error: {0}")]
    Matching(String),

    #[error("verification setup error: {0}")]
    Setup(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
