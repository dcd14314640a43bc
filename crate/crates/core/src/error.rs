use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input (parse failures, bad positions, duplicate values).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Well-formed input outside the domain of the operation, e.g. a permutation
    /// that is not an indecomposable {4321, 3241}-avoider.
    #[error("domain error: {0}")]
    Domain(String),

    /// A height sequence asked for a list position that does not exist.
    #[error("invalid height {height} at step {step}: insertion list has length {len}")]
    InvalidHeight {
        step: usize,
        height: usize,
        len: usize,
    },

    /// A structural property that must hold for every avoider did not.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
