use thiserror::Error;

/// Failure modes shared by every solver stage.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments outside the region where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation too close to a pole of a rational expression.
    #[error("singular evaluation: {0}")]
    Singular(String),
    /// A numerical procedure could not reach the requested accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// No sign change inside the root-search bracket.
    #[error("bracketing error: {0}")]
    Bracketing(String),
    /// Unusable solver configuration, e.g. no feasible start point.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
