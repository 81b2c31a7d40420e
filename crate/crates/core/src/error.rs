use thiserror::Error;

/// Errors raised by every layer of the crate.
///
/// Each variant maps onto one CLI exit code, see [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("guard `{name}` exceeded: {value} > {limit}")]
    Guard {
        name: &'static str,
        limit: usize,
        value: usize,
    },

    #[error("golden mismatch: {0}")]
    GoldenMismatch(String),

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("modulus {modulus} does not cover the Schur multiplier of a group of order {order}; retry with a larger modulus")]
    ModulusTooSmall { modulus: u64, order: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Guard { .. } => 1,
            Error::InvalidInput(_) | Error::Json(_) | Error::ModulusTooSmall { .. } => 2,
            Error::Io(_) => 2,
            Error::GoldenMismatch(_) => 3,
            Error::Integrity(_) => 4,
        }
    }
}

/// Returns a guard error when `value` exceeds `limit`.
pub fn check_guard(name: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::Guard { name, limit, value })
    } else {
        Ok(())
    }
}
