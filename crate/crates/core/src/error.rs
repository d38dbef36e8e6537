use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A state or parameter lies outside the region where a formula is real.
    #[error("domain error: {0}")]
    Domain(String),

    /// Integration left the validity region of a flow.
    #[error("domain error at t = {time}: {reason}")]
    DomainExit { time: f64, reason: String },

    #[error("overflow: {0}")]
    Overflow(String),

    /// Requested level sits too close to the basis cutoff.
    #[error("level {n} too close to truncation edge of basis size {dim} (need n + 4 <= N - 8)")]
    Margin { n: usize, dim: usize },

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn overflow(msg: impl Into<String>) -> Self {
        Error::Overflow(msg.into())
    }

    /// Attach a context label (e.g. which flow failed) to the message.
    pub fn context(self, label: &str) -> Self {
        match self {
            Error::Domain(m) => Error::Domain(format!("{label}: {m}")),
            Error::DomainExit { time, reason } => Error::DomainExit {
                time,
                reason: format!("{label}: {reason}"),
            },
            Error::Overflow(m) => Error::Overflow(format!("{label}: {m}")),
            Error::Convergence(m) => Error::Convergence(format!("{label}: {m}")),
            Error::InvalidParameter(m) => Error::InvalidParameter(format!("{label}: {m}")),
            e @ Error::Margin { .. } => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
