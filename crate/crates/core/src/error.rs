use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value does not fit the finite binary64 range.
    #[error("range error: {0}")]
    Range(String),

    /// `phi` is evaluated at the family root `s = 1 / (1 + 2^t)`.
    #[error("pole: s = {0} is the root 1/(1 + 2^t) of the family polynomial")]
    Pole(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
