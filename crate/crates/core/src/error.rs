use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `n` is outside the range where exhaustive (character-table sized)
    /// computations are allowed.
    #[error("n = {n} exceeds the size limit {max} (set TENSORWALK_MAX_N to override)")]
    SizeLimit { n: usize, max: usize },

    /// Two routes that must agree exactly did not. Always a bug.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Monte Carlo over `F_q` needs `q` prime.
    #[error("unsupported field size q = {q}: Monte Carlo requires a prime q")]
    UnsupportedField { q: u64 },

    #[error("excluded case: {0}")]
    ExcludedCase(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
