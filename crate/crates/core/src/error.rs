use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its allowed domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation was handed an object that breaks its contract, e.g. a
    /// state tagged with the wrong basis.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// The eigensolver did not converge.
    #[error("eigendecomposition failed: {0}")]
    Eigensolver(String),

    /// A single realization of an ensemble failed.
    #[error("realization {index} failed: {source}")]
    Realization {
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::ContractViolation(msg.into())
    }
}
