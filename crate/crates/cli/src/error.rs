use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid module: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] npj_core::Error),
}

impl CliError {
    /// Prefixes input errors with their source.
    pub fn context(self, source: &str) -> Self {
        match self {
            CliError::Schema(s) => CliError::Schema(format!("{source}: {s}")),
            CliError::Input(s) => CliError::Input(format!("{source}: {s}")),
            e => e,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inconsistent(_) => 2,
            _ => 1,
        }
    }
}
