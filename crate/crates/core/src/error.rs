use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation is not supported for this input size or shape.
    #[error("capability error: {0}")]
    Capability(String),
    #[error("not a Weil polynomial: {0}")]
    NotWeil(String),
    /// An internal identity failed; the input was inconsistent.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// Catalog or field data failed validation.
    #[error("data error: {0}")]
    Data(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
