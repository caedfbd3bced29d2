use std::io;
use std::path::PathBuf;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Negative = 1,
    Usage = 2,
    Internal = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] cyclomds::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        use cyclomds::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::Infeasible
                | E::NotSemiprimitive
                | E::NoDecomposition(_)
                | E::BudgetExceeded { .. } => ExitStatus::Negative,
                E::Invariant(_) | E::SignResolutionFailure => ExitStatus::Internal,
                _ => ExitStatus::Usage,
            },
            CliError::Io { .. } | CliError::Json(_) | CliError::Usage(_) => ExitStatus::Usage,
            CliError::Csv(_) => ExitStatus::Internal,
        }
    }
}
