use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// The variants are coarse on purpose: the command-line front end maps
/// them onto exit codes (precondition / parse / undecided).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates a mathematical precondition (zero argument,
    /// repeated places, a pole at the specialization point, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is well posed but outside what this library handles.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A Las Vegas procedure ran out of budget before it could certify
    /// an answer. No verdict is guessed in this case.
    #[error("undecided within budget: {0}")]
    Undecided(String),

    /// A consistency check on computed data failed. Signals a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
