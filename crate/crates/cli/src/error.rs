use sftgroup::ErrorCategory;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed document, unknown command or schema violation.
    #[error("input error: {0}")]
    Input(String),
    /// A computation that completed but refuted its precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Core(#[from] sftgroup::Error),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 is success; 1 input errors; 2 mathematical preconditions; 3 caps
    /// and limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Core(e) => match e.category() {
                ErrorCategory::Input => 1,
                ErrorCategory::Precondition => 2,
                ErrorCategory::Limit => 3,
            },
        }
    }
}

pub(crate) fn input_err(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{path}: {msg}"))
}
