use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::container::{LabeledVolume, Labels};
use super::palette::PALETTE;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceAxis {
    X,
    Y,
    Z,
}

impl FromStr for SliceAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x" => Ok(SliceAxis::X),
            "y" => Ok(SliceAxis::Y),
            "z" => Ok(SliceAxis::Z),
            _ => Err(format!("axis must be x, y or z, got {s:?}")),
        }
    }
}

impl SliceAxis {
    fn name(self) -> char {
        match self {
            SliceAxis::X => 'x',
            SliceAxis::Y => 'y',
            SliceAxis::Z => 'z',
        }
    }
}

/// `k` indices spread evenly over `[0, len)`, centered in equal bins.
pub fn evenly_spaced(len: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| ((2 * i + 1) * len) / (2 * k)).collect()
}

/// Image size and voxel index for pixel `(u, v)` of slice `s`.
fn slice_geometry(dims: [usize; 3], axis: SliceAxis) -> (usize, usize, usize) {
    let [w, h, d] = dims;
    match axis {
        SliceAxis::Z => (w, h, d),
        SliceAxis::Y => (w, d, h),
        SliceAxis::X => (h, d, w),
    }
}

fn voxel(dims: [usize; 3], axis: SliceAxis, s: usize, u: usize, v: usize) -> usize {
    let (x, y, z) = match axis {
        SliceAxis::Z => (u, v, s),
        SliceAxis::Y => (u, s, v),
        SliceAxis::X => (s, u, v),
    };
    x + dims[0] * (y + dims[1] * z)
}

fn write_png(path: &Path, width: usize, height: usize, color: png::ColorType, data: &[u8]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut enc = png::Encoder::new(BufWriter::new(file), width as u32, height as u32);
    enc.set_color(color);
    enc.set_depth(png::BitDepth::Eight);
    let mut writer = enc.write_header().map_err(|e| Error::Png(e.to_string()))?;
    writer.write_image_data(data).map_err(|e| Error::Png(e.to_string()))?;
    writer.finish().map_err(|e| Error::Png(e.to_string()))
}

/// Writes an 8-bit grayscale PNG per requested slice, plus a palette-colored
/// label PNG when the volume carries per-voxel labels.
pub fn export_slices(volume: &LabeledVolume, axis: SliceAxis, indices: &[usize], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let dims = volume.grid.dims().map(|d| d as usize);
    let (width, height, depth) = slice_geometry(dims, axis);
    if let Some(&bad) = indices.iter().find(|&&i| i >= depth) {
        return Err(Error::SliceOutOfRange { index: bad, len: depth });
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    for &s in indices {
        let mut gray = Vec::with_capacity(width * height);
        for v in 0..height {
            for u in 0..width {
                let x = volume.intensity[voxel(dims, axis, s, u, v)];
                gray.push((x.clamp(0.0, 1.0) * 255.0).round() as u8);
            }
        }
        let path = out_dir.join(format!("intensity_{}{s:04}.png", axis.name()));
        write_png(&path, width, height, png::ColorType::Grayscale, &gray)?;
        written.push(path);

        if let Labels::Dense(labels) = &volume.labels {
            let mut rgb = Vec::with_capacity(3 * width * height);
            for v in 0..height {
                for u in 0..width {
                    let l = labels[voxel(dims, axis, s, u, v)] as usize;
                    rgb.extend_from_slice(&PALETTE[l % PALETTE.len()]);
                }
            }
            let path = out_dir.join(format!("labels_{}{s:04}.png", axis.name()));
            write_png(&path, width, height, png::ColorType::Rgb, &rgb)?;
            written.push(path);
        }
    }
    Ok(written)
}
