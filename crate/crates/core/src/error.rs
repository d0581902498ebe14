use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter violated its precondition.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Min-max normalization over a store whose values are all equal.
    #[error("degenerate range: all {count} values equal {value}")]
    DegenerateRange { count: usize, value: f64 },

    /// An EGSE-B session has no unexplored objects left.
    #[error("session exhausted after {queries} queries")]
    SessionExhausted { queries: u64 },

    /// The session already reached its termination condition.
    #[error("session terminated after {queries} queries")]
    SessionTerminated { queries: u64 },

    /// Two routes to the same analytic quantity disagreed.
    #[error("analytic inconsistency at k = {k}: {detail}")]
    AnalyticInconsistency { k: u64, detail: String },

    /// A pmf argument outside the distribution's domain.
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }
}
