use thiserror::Error;

/// Failures surfaced by the CLI, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NonIntegral(String),
    #[error("{0}")]
    Inconclusive(String),
    #[error("{0}")]
    Preset(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::NonIntegral(_) => 3,
            CliError::Inconclusive(_) => 4,
            CliError::Preset(_) => 5,
            CliError::Io(_) => 6,
        }
    }
}

impl From<tiltwall_core::Error> for CliError {
    fn from(e: tiltwall_core::Error) -> Self {
        use tiltwall_core::Error as E;
        match e {
            E::NonIntegralDivisor(_) => CliError::NonIntegral(e.to_string()),
            E::InvalidPreset(_) => CliError::Preset(e.to_string()),
            E::NegativeDiscriminant(_) => CliError::Inconclusive(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
