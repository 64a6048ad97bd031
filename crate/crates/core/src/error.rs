use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("checksum mismatch in {0}")]
    Checksum(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

/// Resource error once `deadline` has passed.
pub fn check_deadline(deadline: Option<std::time::Instant>, during: &str) -> Result<()> {
    match deadline {
        Some(t) if std::time::Instant::now() > t => Err(Error::Resource(format!("time limit reached while {during}"))),
        _ => Ok(()),
    }
}
