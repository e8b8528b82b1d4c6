//! Archives, file formats and query dispatch for the `orsti` command line.

pub mod archive;
pub mod formats;
pub mod query;

use orsti_core::Error as CoreError;

pub use archive::{Index, Kind};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Usage(String),
    #[error("this query needs a {expected} archive, found {found}")]
    KindMismatch { expected: &'static str, found: Kind },
}

impl Error {
    /// 2 for bad input, 3 for misuse.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Usage(_) | Error::KindMismatch { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
