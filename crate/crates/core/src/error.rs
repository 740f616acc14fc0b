use thiserror::Error;

/// Errors raised across the crate.
///
/// The variants separate bad caller input from failures that indicate a bug
/// or a counterexample to the tightness theorem, so front ends can map them
/// to distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("measurement outcome has probability {probability:e}, it cannot herald a state")]
    ZeroProbabilityBranch { probability: f64 },

    #[error("simplex exceeded {pivots} pivots without terminating")]
    SolverFailure { pivots: usize },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the library.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidArgument(_) | Error::ZeroProbabilityBranch { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
