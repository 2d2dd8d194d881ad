use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Covariance matrix is not symmetric or violates V + iΩ ≥ 0.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// (X, Y) fails the complete-positivity condition.
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    /// Matrix is not symplectic.
    #[error("not symplectic: residual {0:e}")]
    NotSymplectic(f64),

    /// A bound's hypotheses are violated for these parameters. The message
    /// names the violated condition, e.g. `eta <= (1-eta)*NB`.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The operation does not support this channel kind.
    #[error("channel kind mismatch: {0}")]
    KindMismatch(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
