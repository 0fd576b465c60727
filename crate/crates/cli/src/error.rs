use std::fmt;

/// Process exit codes.
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config, or an unsupported problem/solver pair.
    Usage(String),
    /// A solver size limit was hit.
    Resource(String),
    /// Reading or writing files failed.
    Io(String),
    /// Any other solver failure.
    Solver(disthyp::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Io(_) => EXIT_IO,
            CliError::Solver(_) => 1,
        }
    }

    pub fn io(context: impl fmt::Display, err: impl fmt::Display) -> Self {
        CliError::Io(format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Solver(e) => write!(f, "solver error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<disthyp::Error> for CliError {
    fn from(e: disthyp::Error) -> Self {
        use disthyp::Error as E;
        match e {
            E::Resource(m) => CliError::Resource(m),
            E::Io(err) => CliError::Io(err.to_string()),
            E::Parse { .. } | E::Json(_) | E::InvalidHypergraph(_) => CliError::Io(e.to_string()),
            E::InvalidInput(_) | E::DimensionMismatch { .. } | E::EmptyFamily | E::Degenerate(_) => {
                CliError::Usage(e.to_string())
            }
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
