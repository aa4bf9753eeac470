use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller broke an operation's precondition (dimension mismatch,
    /// infeasible reference point, unknown catalog id, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// The objective evaluation budget is spent.
    #[error("evaluation budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },

    /// An objective or constraint returned NaN or an infinity.
    #[error("non-finite value from {what}: {value}")]
    NonFinite { what: &'static str, value: f64 },

    /// The general constraint repair could not isolate a feasible
    /// sub-segment on the repair ray.
    #[error("repair failed: {0}")]
    RepairFailed(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn check_dim(what: &str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return usage(format!("{what}: expected dimension {expected}, got {got}"));
    }
    Ok(())
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
