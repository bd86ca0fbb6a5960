use std::path::PathBuf;

use thiserror::Error;

use crate::storage::FormatError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown shape class {0}")]
    UnknownClass(u32),

    #[error("subset of {requested} requested but only {available} recipes qualify")]
    SubsetTooLarge { requested: usize, available: usize },

    #[error("grid shape mismatch: expected {expected} voxels, got {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for axis of length {len}")]
    SliceOutOfRange { index: usize, len: usize },

    #[error("oracle found no boundary within {0} of the query point")]
    NoBoundary(f64),

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("png encoding failed: {0}")]
    Png(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
