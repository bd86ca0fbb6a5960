//! Formula-driven synthetic 3D volumes: analytic signed distance fields are
//! placed, textured and composed into labeled voxel grids.
//!
//! The pipeline runs `library` (shape classes) → `compose` (placement,
//! rendering, labeling) → `storage` (container files and manifest). The
//! `oracle` and `validate` modules hold the independent checks.

pub mod compose;
pub mod error;
pub mod geometry;
pub mod library;
pub mod oracle;
pub mod storage;
pub mod texture;
pub mod validate;

pub use error::{Error, Result};
