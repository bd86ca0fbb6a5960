use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::checksum64;
use crate::compose::GridSpec;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"FDIF";
pub const FORMAT_VERSION: u32 = 1;
/// Magic, version, three dtype/mode bytes, one reserved byte and three
/// dimensions.
pub const HEADER_LEN: usize = 24;

const DTYPE_F32: u8 = 0;
const DTYPE_U16: u8 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Segmentation,
    Classification,
}

impl Mode {
    pub fn code(self) -> u8 {
        match self {
            Mode::Segmentation => 0,
            Mode::Classification => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Labels {
    /// One label per voxel, x-fastest.
    Dense(Vec<u16>),
    /// A single class id for the whole volume.
    Class(u16),
}

/// Payloads of one sample as stored on disk.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledVolume {
    pub grid: GridSpec,
    /// `W*H*D` values, x-fastest.
    pub intensity: Vec<f32>,
    pub labels: Labels,
}

impl LabeledVolume {
    pub fn mode(&self) -> Mode {
        match self.labels {
            Labels::Dense(_) => Mode::Segmentation,
            Labels::Class(_) => Mode::Classification,
        }
    }

    pub fn dense_labels(&self) -> Option<&[u16]> {
        match &self.labels {
            Labels::Dense(v) => Some(v),
            Labels::Class(_) => None,
        }
    }

    pub fn max_label(&self) -> u16 {
        match &self.labels {
            Labels::Dense(v) => v.iter().copied().max().unwrap_or(0),
            Labels::Class(c) => *c,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad magic bytes {0:02x?}, expected \"FDIF\"")]
    BadMagic([u8; 4]),
    #[error("unsupported format version {0} (this reader handles {FORMAT_VERSION})")]
    UnsupportedVersion(u32),
    #[error("unknown mode flag {0}")]
    UnknownMode(u8),
    #[error("unknown {field} dtype code {code}")]
    UnknownDtype { field: &'static str, code: u8 },
    #[error("reserved header byte is {0}, expected 0")]
    Reserved(u8),
    #[error("truncated file: expected {expected} bytes, found {found} ({} bytes missing)", expected - found)]
    Truncated { expected: usize, found: usize },
    #[error("{0} unexpected trailing bytes after the label payload")]
    TrailingBytes(usize),
    #[error("grid dimensions {0:?} are invalid or overflow the address space")]
    BadDimensions([u32; 3]),
    #[error("intensity payload has {found} values, grid needs {expected}")]
    PayloadMismatch { expected: usize, found: usize },
    #[error("checksum mismatch: manifest has {expected}, file has {found}")]
    ChecksumMismatch { expected: String, found: String },
}

fn payload_len(dims: [u32; 3], mode: Mode) -> Option<(usize, usize)> {
    let n = (dims[0] as usize)
        .checked_mul(dims[1] as usize)?
        .checked_mul(dims[2] as usize)?;
    let labels = match mode {
        Mode::Segmentation => n.checked_mul(2)?,
        Mode::Classification => 2,
    };
    let total = n.checked_mul(4)?.checked_add(labels)?.checked_add(HEADER_LEN)?;
    Some((n, total))
}

/// Serializes a sample into the container layout.
pub fn encode_sample(volume: &LabeledVolume) -> Result<Vec<u8>, FormatError> {
    let dims = volume.grid.dims();
    let mode = volume.mode();
    let (n, total) = payload_len(dims, mode).ok_or(FormatError::BadDimensions(dims))?;
    if volume.intensity.len() != n {
        return Err(FormatError::PayloadMismatch {
            expected: n,
            found: volume.intensity.len(),
        });
    }
    if let Labels::Dense(l) = &volume.labels {
        if l.len() != n {
            return Err(FormatError::PayloadMismatch { expected: n, found: l.len() });
        }
    }
    let mut out = Vec::with_capacity(total);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&[mode.code(), DTYPE_F32, DTYPE_U16, 0]);
    for d in dims {
        out.extend_from_slice(&d.to_le_bytes());
    }
    for v in &volume.intensity {
        out.extend_from_slice(&v.to_le_bytes());
    }
    match &volume.labels {
        Labels::Dense(l) => l.iter().for_each(|v| out.extend_from_slice(&v.to_le_bytes())),
        Labels::Class(c) => out.extend_from_slice(&c.to_le_bytes()),
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

/// Parses a container. Nothing is returned unless the whole file is valid.
pub fn decode_sample(bytes: &[u8]) -> Result<LabeledVolume, FormatError> {
    if bytes.len() < HEADER_LEN {
        return Err(if bytes.len() >= 4 && bytes[..4] != MAGIC {
            FormatError::BadMagic(bytes[..4].try_into().unwrap())
        } else {
            FormatError::Truncated {
                expected: HEADER_LEN,
                found: bytes.len(),
            }
        });
    }
    let magic: [u8; 4] = bytes[..4].try_into().unwrap();
    if magic != MAGIC {
        return Err(FormatError::BadMagic(magic));
    }
    let version = u32_at(bytes, 4);
    if version != FORMAT_VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    let mode = match bytes[8] {
        0 => Mode::Segmentation,
        1 => Mode::Classification,
        m => return Err(FormatError::UnknownMode(m)),
    };
    if bytes[9] != DTYPE_F32 {
        return Err(FormatError::UnknownDtype {
            field: "intensity",
            code: bytes[9],
        });
    }
    if bytes[10] != DTYPE_U16 {
        return Err(FormatError::UnknownDtype {
            field: "label",
            code: bytes[10],
        });
    }
    if bytes[11] != 0 {
        return Err(FormatError::Reserved(bytes[11]));
    }
    let dims = [u32_at(bytes, 12), u32_at(bytes, 16), u32_at(bytes, 20)];
    let grid = GridSpec::new(dims[0], dims[1], dims[2]).map_err(|_| FormatError::BadDimensions(dims))?;
    let (n, total) = payload_len(dims, mode).ok_or(FormatError::BadDimensions(dims))?;
    if bytes.len() < total {
        return Err(FormatError::Truncated {
            expected: total,
            found: bytes.len(),
        });
    }
    if bytes.len() > total {
        return Err(FormatError::TrailingBytes(bytes.len() - total));
    }
    let body = &bytes[HEADER_LEN..];
    let intensity = body[..4 * n]
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let mut label_bytes = body[4 * n..].chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]]));
    let labels = match mode {
        Mode::Segmentation => Labels::Dense(label_bytes.collect()),
        Mode::Classification => Labels::Class(label_bytes.next().unwrap()),
    };
    Ok(LabeledVolume { grid, intensity, labels })
}

/// Writes the container and returns its 64-bit checksum.
pub fn write_sample(volume: &LabeledVolume, path: &Path) -> Result<String> {
    let bytes = encode_sample(volume)?;
    fs::write(path, &bytes).map_err(|e| Error::io(path, e))?;
    Ok(checksum64(&bytes))
}

pub fn read_sample(path: &Path) -> Result<LabeledVolume> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(decode_sample(&bytes)?)
}

/// Reads a container after checking it against an expected checksum.
pub fn read_verified(path: &Path, expected: &str) -> Result<LabeledVolume> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let found = checksum64(&bytes);
    if found != expected {
        return Err(FormatError::ChecksumMismatch {
            expected: expected.to_string(),
            found,
        }
        .into());
    }
    Ok(decode_sample(&bytes)?)
}
