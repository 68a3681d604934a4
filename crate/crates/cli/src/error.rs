use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] decomplab_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid arguments: {0}")]
    Usage(String),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILED: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const CAP: u8 = 3;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use decomplab_core::Error as E;
        match self {
            CliError::Core(E::ResourceCap(_)) => exit::CAP,
            CliError::Core(
                E::AssertionFailure(_)
                | E::AxiomViolation { .. }
                | E::SimplicialIdentity(_)
                | E::InvalidValuation(_),
            ) => exit::FAILED,
            _ => exit::INVALID,
        }
    }
}
