use crate::driver::RunRecord;

/// Error type shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An input point lies outside the `[0,1]^d` search domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Mismatched lengths between a code and the structure it indexes.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Non-finite values where finite reals are required.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Problem size exceeds a solver's hard limit.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A statistic is undefined for the given record.
    #[error("undefined statistic: {0}")]
    UndefinedStatistic(String),

    /// The external solver subprocess failed or returned a bad response.
    #[error("external solver: {0}")]
    ExternalSolver(String),

    /// Objective name not present in the registry.
    #[error("unknown objective '{name}'; available: {available}")]
    UnknownObjective { name: String, available: String },

    /// Malformed serialized data (codebook, QUBO, or solution files).
    #[error("parse error: {0}")]
    Parse(String),

    /// An objective evaluation failed mid-run; the trajectory up to the
    /// failure is preserved.
    #[error("run aborted: {message}")]
    RunAborted {
        message: String,
        partial: Box<RunRecord>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
