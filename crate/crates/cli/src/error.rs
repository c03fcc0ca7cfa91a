use pairstab::error::CoreError;
use pairstab_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Malformed or invalid input; `position` points into the offending
    /// string when known.
    #[error("{message}")]
    Input {
        message: String,
        position: Option<usize>,
    },
    #[error("step budget of {limit} exhausted")]
    Budget { limit: u64 },
    /// A computed result failed its own re-verification.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input {
            message: message.into(),
            position: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Budget { .. } => 3,
            CliError::Internal(_) => 1,
        }
    }

    pub fn class(&self) -> &'static str {
        match self {
            CliError::Input { .. } => "input",
            CliError::Budget { .. } => "budget",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Budget(b) => CliError::Budget { limit: b.limit },
            AlgebraError::Syntax { position, .. } | AlgebraError::UnknownVariable { position, .. } => {
                CliError::Input {
                    message: e.to_string(),
                    position: Some(position),
                }
            }
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Budget(b) => CliError::Budget { limit: b.limit },
            CoreError::Algebra(a) => a.into(),
            CoreError::CertificateCheck(m) => CliError::Internal(m),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::input(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
