use std::fmt;
use std::path::Path;

use lexdyn_core::{CompareError, FitError, GenError, IngestError, StatsError, TableError};

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_EMPTY: u8 = 3;
pub const EXIT_FIT: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(EXIT_INVALID, message)
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::new(EXIT_IO, format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        let code = match e {
            IngestError::InvalidEncoding { .. } => EXIT_IO,
            IngestError::EmptyDocument(_) => EXIT_EMPTY,
            IngestError::ZeroChunkSize | IngestError::InvalidPattern(_) => EXIT_INVALID,
        };
        Self::new(code, e.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        let code = match e {
            StatsError::EmptyUnit | StatsError::EmptyFragment(_) | StatsError::NoFragments => EXIT_EMPTY,
            StatsError::ZeroStep | StatsError::InconsistentCounts(_) => EXIT_INVALID,
        };
        Self::new(code, e.to_string())
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        Self::new(EXIT_FIT, format!("fit failed: {e}"))
    }
}

impl From<CompareError> for CliError {
    fn from(e: CompareError) -> Self {
        match e {
            CompareError::Fit(f) => f.into(),
            other => Self::new(EXIT_MISMATCH, other.to_string()),
        }
    }
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::Io { .. } => Self::new(EXIT_IO, e.to_string()),
            TableError::Stats(s) => s.into(),
            other => Self::invalid(other.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::invalid(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::invalid(format!("json: {e}"))
    }
}
