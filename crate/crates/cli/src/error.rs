use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error("output pipe closed")]
    Pipe,
    #[error(transparent)]
    Core(#[from] ambiquant::Error),
    #[error("{failed} of {total} self-test checks failed")]
    SelftestFailed { failed: usize, total: usize },
}

/// The single error object written to stderr on failure.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub code: &'static str,
    pub message: String,
    pub context: String,
}

impl CliError {
    pub fn code(&self) -> &'static str {
        use ambiquant::Error as E;
        match self {
            CliError::Config(_) => "config_error",
            CliError::Io(_) | CliError::Pipe => "io_error",
            CliError::SelftestFailed { .. } => "selftest_failed",
            CliError::Core(e) => match e {
                E::Domain(_) | E::DomainExit { .. } => "domain_error",
                E::Margin { .. } => "margin_error",
                E::Overflow(_) => "overflow_error",
                E::Convergence(_) => "convergence_error",
                E::InvalidParameter(_) => "config_error",
            },
        }
    }

    /// 2 config, 3 domain or margin, 4 numerical.
    pub fn exit_code(&self) -> u8 {
        match self.code() {
            "config_error" | "io_error" => 2,
            "domain_error" | "margin_error" => 3,
            _ => 4,
        }
    }

    pub fn record(&self, context: &str) -> ErrorRecord {
        ErrorRecord { code: self.code(), message: self.to_string(), context: context.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
