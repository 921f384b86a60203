use num_rational::BigRational;
use thiserror::Error;

/// Errors raised by the workbench.
///
/// The CLI maps [`Error::Parse`] to exit code 2 and every other variant to
/// exit code 1.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("not a partition of the path space: {reason} (Kraft sum {kraft})")]
    Partition { reason: String, kraft: BigRational },
    #[error("mode mismatch: {0}")]
    Mode(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn mode(msg: impl Into<String>) -> Self {
        Error::Mode(msg.into())
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
