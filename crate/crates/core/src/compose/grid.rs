use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point3;

pub const MIN_GRID_DIM: u32 = 8;

/// Voxel grid covering `[-1, 1]^3`; serialized as `[W, H, D]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u32; 3]", into = "[u32; 3]")]
pub struct GridSpec {
    w: u32,
    h: u32,
    d: u32,
}

impl GridSpec {
    pub fn new(w: u32, h: u32, d: u32) -> Result<Self> {
        if w < MIN_GRID_DIM || h < MIN_GRID_DIM || d < MIN_GRID_DIM {
            return Err(Error::Config(format!(
                "grid {w}x{h}x{d}: every dimension must be at least {MIN_GRID_DIM}"
            )));
        }
        (w as usize)
            .checked_mul(h as usize)
            .and_then(|n| n.checked_mul(d as usize))
            .filter(|&n| n <= u32::MAX as usize)
            .ok_or_else(|| Error::Config(format!("grid {w}x{h}x{d} is too large")))?;
        Ok(Self { w, h, d })
    }

    /// `n^3` grid. Panics if `n < 8`.
    pub fn cube(n: u32) -> Self {
        Self::new(n, n, n).expect("cube grid dimension")
    }

    pub fn dims(&self) -> [u32; 3] {
        [self.w, self.h, self.d]
    }

    pub fn len(&self) -> usize {
        self.w as usize * self.h as usize * self.d as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Voxels in one z-slice.
    pub fn slice_len(&self) -> usize {
        self.w as usize * self.h as usize
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.w as usize * (j + self.h as usize * k)
    }

    #[inline]
    pub fn unindex(&self, idx: usize) -> (usize, usize, usize) {
        let w = self.w as usize;
        let h = self.h as usize;
        (idx % w, (idx / w) % h, idx / (w * h))
    }

    /// Normalized coordinate of voxel center `i` along an axis of `n` voxels.
    #[inline]
    pub fn coord(n: u32, i: usize) -> f64 {
        2.0 * (i as f64 + 0.5) / n as f64 - 1.0
    }

    #[inline]
    pub fn center(&self, i: usize, j: usize, k: usize) -> Point3 {
        Point3::new(Self::coord(self.w, i), Self::coord(self.h, j), Self::coord(self.d, k))
    }

    /// Index range `[lo, hi)` of voxel centers with coordinate in `[a, b]`.
    pub fn span(n: u32, a: f64, b: f64) -> (usize, usize) {
        let to_index = |x: f64| (x + 1.0) * n as f64 / 2.0 - 0.5;
        let lo = to_index(a).ceil().max(0.0);
        let hi = (to_index(b).floor() + 1.0).min(n as f64);
        if hi <= lo {
            (0, 0)
        } else {
            (lo as usize, hi as usize)
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::cube(96)
    }
}

impl TryFrom<[u32; 3]> for GridSpec {
    type Error = String;

    fn try_from(v: [u32; 3]) -> Result<Self, String> {
        GridSpec::new(v[0], v[1], v[2]).map_err(|e| e.to_string())
    }
}

impl From<GridSpec> for [u32; 3] {
    fn from(g: GridSpec) -> Self {
        g.dims()
    }
}
