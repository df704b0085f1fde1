use std::fmt;

/// Failure classes, each with its own process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Validation,
    Tolerance,
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self { kind: Kind::Validation, message: message.into() }
    }

    pub fn tolerance(message: impl Into<String>) -> Self {
        Self { kind: Kind::Tolerance, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self { kind: Kind::Numeric, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            Kind::Validation => 1,
            Kind::Tolerance => 2,
            Kind::Numeric => 3,
        }
    }

    /// Prefixes the message with where the failure happened.
    pub fn context(mut self, at: &str) -> Self {
        self.message = format!("{at}: {}", self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ncdeform::Error> for CliError {
    fn from(e: ncdeform::Error) -> Self {
        use ncdeform::Error::*;
        match e {
            NoConvergence { .. } | NotMonotone { .. } => Self::numeric(e.to_string()),
            other => Self::validation(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::validation(format!("malformed JSON: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::validation(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::validation(format!("csv: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
