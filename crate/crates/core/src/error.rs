use thiserror::Error;

/// Errors surfaced by the re-ranking toolkit.
///
/// Variants follow the failure taxonomy used throughout the crate: bad static
/// configuration, bad ingested data, bad call arguments, numeric breakdown,
/// and size-cap violations each get their own class so callers can map them
/// to exit codes or HTTP statuses without string matching.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("ingestion error: {0}")]
    Ingest(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("training error: {0}")]
    Training(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
