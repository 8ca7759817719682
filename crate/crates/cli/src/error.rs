use std::fmt;

/// Failure of a command, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Convergence(String),
    Io(String),
    Parse(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Convergence(_) => 4,
            CliError::Io(_) => 5,
            CliError::Parse(_) => 6,
        }
    }

    /// Prefixes the message with where it happened.
    pub fn context(self, at: impl fmt::Display) -> Self {
        match self {
            CliError::Usage(s) => CliError::Usage(format!("{at}: {s}")),
            CliError::Domain(s) => CliError::Domain(format!("{at}: {s}")),
            CliError::Convergence(s) => CliError::Convergence(format!("{at}: {s}")),
            CliError::Io(s) => CliError::Io(format!("{at}: {s}")),
            CliError::Parse(s) => CliError::Parse(format!("{at}: {s}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            CliError::Usage(s) => ("usage", s),
            CliError::Domain(s) => ("domain", s),
            CliError::Convergence(s) => ("convergence", s),
            CliError::Io(s) => ("io", s),
            CliError::Parse(s) => ("parse", s),
        };
        write!(f, "{kind} error: {msg}")
    }
}

impl From<jtheta::Error> for CliError {
    fn from(e: jtheta::Error) -> Self {
        match e {
            jtheta::Error::Convergence { .. } => CliError::Convergence(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
