use thiserror::Error;

/// Errors produced by the computational routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Every coefficient fell inside the zero-snap band.
    #[error("all coefficients are zero (within the zero-snap tolerance)")]
    AllZero,

    /// A Sturm-chain remainder lost its leading coefficient to cancellation.
    #[error("polynomial remainder sequence is ill-conditioned")]
    IllConditioned,

    /// The companion-matrix eigenvalue solver did not converge.
    #[error("eigenvalue solver failed to converge")]
    EigenFailure,

    /// The payoff table has an all-zero gap vector.
    #[error("degenerate game: every payoff gap is zero")]
    Degenerate,

    /// An intermediate quantity left the representable range.
    #[error("numeric overflow while evaluating {0}")]
    NumericOverflow(&'static str),

    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exhaustive enumeration requested beyond its size cap.
    #[error("enumeration over n = {n} exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    /// Invalid configuration value.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
