use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("center mismatch: {0} vs {1}")]
    CenterMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("insufficient truncation: {0}")]
    Truncation(String),
    #[error("not invertible: {0}")]
    Singular(String),
    #[error("cannot translate a truncated series by a nonzero shift")]
    TruncatedTranslation,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A mathematical identity that must hold did not; reported as a
    /// certification failure rather than an input problem.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for failures of a mathematical certification (as opposed to bad input).
    pub fn is_certification_failure(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
