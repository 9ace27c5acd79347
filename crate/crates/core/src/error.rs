use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid polynomial order {0}: must exceed -1")]
    InvalidOrder(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("{what} did not converge: achieved {achieved:e}, requested {requested:e}")]
    NonConvergence {
        what: String,
        achieved: f64,
        requested: f64,
    },

    #[error("quadrature exactness {available} is below the required degree {required}")]
    InsufficientDegree { required: usize, available: usize },

    #[error("truncation leakage {leakage:e} exceeds tolerance {tol:e}")]
    Leakage { leakage: f64, tol: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cross-check mismatch: {0}")]
    Mismatch(String),

    #[error("report has no rows")]
    EmptyReport,

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
