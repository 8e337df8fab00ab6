use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Parse { source_name: String, line: usize, column: usize, message: String },

    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },

    #[error("unit error for {field}: {reason}")]
    Unit { field: String, reason: String },

    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Physics(#[from] dipole_decoherence::Error),

    #[error("row {row} ({context}): {source}")]
    Row { row: usize, context: String, source: Box<CliError> },

    #[error("decoherence rate {gamma:.3e} Hz exceeds the budget of {budget:.3e} Hz")]
    Budget { gamma: f64, budget: f64 },

    #[error("{failed} of {total} validation checks failed")]
    ChecksFailed { failed: usize, total: usize },

    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Validation { field: field.into(), reason: reason.into() }
    }

    /// Process exit code: 2 configuration, 3 regime, 4 numeric, 5 budget.
    pub fn exit_code(&self) -> i32 {
        use dipole_decoherence::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } | CliError::Unit { .. } | CliError::Io { .. } => 2,
            CliError::Physics(E::Regime { .. }) => 3,
            CliError::Physics(E::Domain { .. }) | CliError::Physics(E::Dimension { .. }) => 2,
            CliError::Physics(_) => 4,
            CliError::Row { source, .. } => source.exit_code(),
            CliError::Budget { .. } => 5,
            CliError::ChecksFailed { .. } => 4,
            CliError::Output(_) => 4,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
