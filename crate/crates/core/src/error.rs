use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown generator `{0}` (expected one of x, k, q, p, hbar, i, one)")]
    UnknownGenerator(String),

    /// A coefficient had an hbar-free part where division by `i hbar` was required.
    #[error("not divisible by i*hbar: term {term} has an hbar-free coefficient")]
    NotDivisible { term: String },

    #[error("{role} must be purely {expected}, got {found}")]
    InvalidSector {
        role: &'static str,
        expected: &'static str,
        found: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
