//! On-disk container format, dataset manifest and PNG slice export.
//!
//! A sample file is a 24-byte little-endian header followed by the intensity
//! payload (`f32`, x-fastest) and the label payload (`u16` per voxel, or a
//! single class id in classification mode). See [`container`] for the exact
//! byte offsets.

pub mod container;
mod manifest;
mod palette;
mod slices;

pub use container::{
    decode_sample, encode_sample, read_sample, read_verified, write_sample, FormatError, LabeledVolume, Labels, Mode,
    FORMAT_VERSION, HEADER_LEN, MAGIC,
};
pub use manifest::{DatasetManifest, ManifestStatus, SampleEntry, MANIFEST_FILE};
pub use palette::PALETTE;
pub use slices::{export_slices, evenly_spaced, SliceAxis};

use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    to_hex(&Sha256::digest(bytes))
}

/// First 64 bits of the SHA-256 digest, as 16 hex digits.
pub fn checksum64(bytes: &[u8]) -> String {
    to_hex(&Sha256::digest(bytes)[..8])
}

fn to_hex(bytes: &[u8]) -> String {
    use std::fmt::Write;
    bytes.iter().fold(String::with_capacity(2 * bytes.len()), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}
