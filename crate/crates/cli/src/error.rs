//! CLI error wrapper with exit-code mapping: 2 for usage problems, 1 for
//! runtime/verification failures.

use std::fmt;
use std::io;

use relspin::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(CoreError),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                CoreError::InvalidHalfInteger(_)
                | CoreError::ScenarioMismatch(_)
                | CoreError::EstimatorMismatch(_)
                | CoreError::InvalidEstimator(_)
                | CoreError::CosineOutOfRange(_) => 2,
                _ => 1,
            },
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}
