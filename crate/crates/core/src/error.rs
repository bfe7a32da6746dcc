use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated series hit its term budget before reaching the requested tolerance.
    #[error("series budget exhausted after {terms} terms: tail bound {achieved:e} exceeds tolerance {tolerance:e}")]
    Budget {
        terms: usize,
        achieved: f64,
        tolerance: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The L-curve has no usable corner; callers should fall back to an a-priori rule.
    #[error("parameter selection failed: {0}; fall back to an a-priori rule")]
    Selection(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
