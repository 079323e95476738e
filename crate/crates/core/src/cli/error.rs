use thiserror::Error;

use super::ConfigError;
use crate::ec::EcError;
use crate::fixture::FixtureError;
use crate::ihhl::IhhlError;
use crate::linalg::LinalgError;
use crate::physics::PhysicsError;
use crate::qsim::QsimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    Precondition = 2,
    NonConvergence = 3,
    Io = 4,
    Usage = 64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error("{0}")]
    Io(String),
    #[error("{failed} acceptance check(s) failed")]
    VerificationFailed { failed: usize },
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Usage(_) => ExitStatus::Usage,
            CliError::Precondition(_) => ExitStatus::Precondition,
            CliError::NonConvergence(_) => ExitStatus::NonConvergence,
            CliError::Io(_) => ExitStatus::Io,
            CliError::VerificationFailed { .. } => ExitStatus::VerificationFailed,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => CliError::Io(e.to_string()),
            ConfigError::Syntax(_) => CliError::Usage(e.to_string()),
            ConfigError::Invalid(_) => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<PhysicsError> for CliError {
    fn from(e: PhysicsError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<EcError> for CliError {
    fn from(e: EcError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NoConvergence { .. } => CliError::NonConvergence(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<QsimError> for CliError {
    fn from(e: QsimError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<IhhlError> for CliError {
    fn from(e: IhhlError) -> Self {
        match e {
            IhhlError::Incomplete { .. } | IhhlError::DuplicateEigenvalue { .. } | IhhlError::NonFinite => {
                CliError::NonConvergence(e.to_string())
            }
            IhhlError::Export(_) => CliError::Io(e.to_string()),
            IhhlError::Linalg(inner) => inner.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}
