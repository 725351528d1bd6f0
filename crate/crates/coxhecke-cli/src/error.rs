use coxhecke::cartan::CartanError;
use coxhecke::coxgroup::CoxeterError;
use coxhecke::klbase::KlError;
use coxhecke::leading::LeadingError;
use coxhecke::relcells::CellError;
use coxhecke::ring::RingError;

/// Process exit statuses.
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Compute(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap(_) => EXIT_CAP,
            CliError::Compute(_) => 1,
            CliError::Input(_) | CliError::Io { .. } => EXIT_INPUT,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> CliError {
        CliError::Io { path: path.display().to_string(), source }
    }
}

impl From<CoxeterError> for CliError {
    fn from(e: CoxeterError) -> CliError {
        match e {
            CoxeterError::TooLarge { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CartanError> for CliError {
    fn from(e: CartanError) -> CliError {
        CliError::Input(e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> CliError {
        CliError::Input(e.to_string())
    }
}

impl From<KlError> for CliError {
    fn from(e: KlError) -> CliError {
        CliError::Compute(e.to_string())
    }
}

impl From<CellError> for CliError {
    fn from(e: CellError) -> CliError {
        match e {
            CellError::Coxeter(c) => c.into(),
            CellError::UnequalParameters | CellError::BadChain => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<LeadingError> for CliError {
    fn from(e: LeadingError) -> CliError {
        match e {
            LeadingError::Coxeter(c) => c.into(),
            LeadingError::Cell(c) => c.into(),
            LeadingError::RankDeficient { .. } => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}
