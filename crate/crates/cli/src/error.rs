use std::fmt;

use voltlift::{GraphError, OrbitError, SpectraError, TokenError, VoltageError};

/// Command failure, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad parameters or unreadable input (exit 2).
    Usage(String),
    /// An eigenproblem did not converge or was too large (exit 3).
    Numeric(String),
    /// A verification or reproduction found a mismatch (exit 1).
    Mismatch(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) | Failure::Mismatch(m) => f.write_str(m),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::Eigen(_) => Failure::Numeric(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

macro_rules! usage_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        })*
    };
}

usage_errors!(
    GraphError,
    OrbitError,
    TokenError,
    VoltageError,
    voltlift::AlgebraError,
    serde_json::Error,
    toml::de::Error
);

pub type CliResult<T> = Result<T, Failure>;
