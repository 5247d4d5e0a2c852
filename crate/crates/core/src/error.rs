use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed call: wrong slot kind, dimension mismatch, bad permutation.
    #[error("argument error: {0}")]
    Argument(String),
    /// Singular or ill-conditioned input.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// The operation does not apply to this model or dimension.
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("unknown id: {0}")]
    UnknownId(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
