use std::fmt;

/// Failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// A verified property does not hold (exit 1).
    Violation(String),
    /// Bad parameters or input (exit 2).
    Invalid(String),
    /// Code above the enumeration cap without sampling (exit 3).
    Cap(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Violation(m) => write!(f, "violation: {m}"),
            CliError::Invalid(m) => write!(f, "error: {m}"),
            CliError::Cap(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<pmepr_codes::Error> for CliError {
    fn from(e: pmepr_codes::Error) -> Self {
        match e {
            pmepr_codes::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Invalid(format!("i/o: {e}"))
    }
}
