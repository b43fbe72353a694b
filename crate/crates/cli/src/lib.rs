//! Commands behind the `qcapulse` binary.

pub mod commands;
pub mod output;
pub mod schedule_file;

/// Failure of a command, mapped onto the process exit status.
#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("state space of dimension {dim} exceeds the limit {limit} (set QCAPULSE_MAX_DIM to raise it)")]
    DimensionLimit { dim: u128, limit: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Invalid(_) => 2,
            CliError::DimensionLimit { .. } => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<qcapulse::Error> for CliError {
    fn from(e: qcapulse::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// Default cap on the state-space dimension (twelve cells).
pub const DEFAULT_MAX_DIM: usize = 1 << 12;

/// Dimension cap, overridable through `QCAPULSE_MAX_DIM`.
pub fn max_dim() -> Result<usize, CliError> {
    match std::env::var("QCAPULSE_MAX_DIM") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|d| *d > 0)
            .ok_or_else(|| CliError::Invalid(format!("QCAPULSE_MAX_DIM={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

/// Rejects cell counts whose state space exceeds the configured cap or the
/// largest line the library supports.
pub fn check_cells(n: usize) -> Result<(), CliError> {
    let limit = max_dim()?.min(1 << qcapulse::MAX_CELLS);
    let dim = if n >= 128 { u128::MAX } else { 1u128 << n };
    if dim > limit as u128 {
        return Err(CliError::DimensionLimit { dim, limit });
    }
    Ok(())
}
