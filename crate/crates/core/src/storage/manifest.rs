use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::container::{read_verified, Mode};
use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManifestStatus {
    Complete,
    /// Generation stopped early; only the listed samples exist.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub index: u64,
    pub file: String,
    pub provenance: String,
    pub checksum: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub mode: Mode,
    pub status: ManifestStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub master_seed: u64,
    pub grid: [u32; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_class: Option<u64>,
    pub library_hash: String,
    pub variant_hash: String,
    pub rng_algorithm: String,
    pub generator_version: String,
    pub samples: Vec<SampleEntry>,
    /// Fully resolved generator configuration.
    pub config: serde_json::Value,
}

impl DatasetManifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(MANIFEST_FILE);
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| Error::io(path, e))
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_FILE);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Re-reads every listed sample and checks its checksum. Returns the
    /// entries that failed, with the reason.
    pub fn verify(&self, dir: &Path) -> Vec<(SampleEntry, String)> {
        self.samples
            .iter()
            .filter_map(|e| match read_verified(&dir.join(&e.file), &e.checksum) {
                Ok(_) => None,
                Err(err) => Some((e.clone(), err.to_string())),
            })
            .collect()
    }
}
