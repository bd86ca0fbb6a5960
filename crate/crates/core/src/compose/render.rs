use rayon::prelude::*;

use super::{GridSpec, IntensitySupport, PrimitiveInstance};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    pub support: IntensitySupport,
    /// Restrict evaluation to the primitive's provable support. Ignored with
    /// global support, where every voxel receives intensity.
    pub cull: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            support: IntensitySupport::Interior,
            cull: true,
        }
    }
}

/// Dense output of rendering one primitive.
#[derive(Clone, Debug, PartialEq)]
pub struct RenderedPrimitive {
    pub intensity: Vec<f64>,
    pub mask: Vec<bool>,
    pub volume: u64,
}

/// Voxel box `[lo, hi)` per axis that may be touched by `prim`.
fn voxel_box(grid: &GridSpec, prim: &PrimitiveInstance, opts: RenderOptions) -> [(usize, usize); 3] {
    let dims = grid.dims();
    if !opts.cull || opts.support == IntensitySupport::Global {
        return dims.map(|n| (0, n as usize));
    }
    let half = prim.transform.world_half_extents(prim.cull_radius());
    let t = prim.transform.translation();
    std::array::from_fn(|a| GridSpec::span(dims[a], t[a] - half[a], t[a] + half[a]))
}

/// Adds the primitive's intensity into `acc` and returns the indices of the
/// voxels in its mask, ascending.
pub fn render_into(grid: &GridSpec, prim: &PrimitiveInstance, opts: RenderOptions, acc: &mut [f64]) -> Vec<u32> {
    assert_eq!(acc.len(), grid.len(), "accumulator does not match grid");
    let [(x0, x1), (y0, y1), (z0, z1)] = voxel_box(grid, prim, opts);
    if x0 == x1 || y0 == y1 || z0 == z1 {
        return Vec::new();
    }
    let culling = opts.cull && opts.support == IntensitySupport::Interior;
    let r2 = prim.cull_radius().powi(2);
    let interior = opts.support == IntensitySupport::Interior;
    let sl = grid.slice_len();
    let w = grid.dims()[0] as usize;
    acc[z0 * sl..z1 * sl]
        .par_chunks_mut(sl)
        .enumerate()
        .map(|(dz, slab)| {
            let k = z0 + dz;
            let mut covered = Vec::new();
            for j in y0..y1 {
                for i in x0..x1 {
                    let q = prim.transform.to_canonical(grid.center(i, j, k));
                    if culling && q.norm_squared() > r2 {
                        continue;
                    }
                    let d = prim.displaced(q);
                    let inside = d <= 0.0;
                    let local = i + w * j;
                    if inside || !interior {
                        slab[local] += prim.mapper.eval(d);
                    }
                    if inside {
                        covered.push((k * sl + local) as u32);
                    }
                }
            }
            covered
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Renders one primitive onto its own dense buffers.
pub fn render_primitive(grid: &GridSpec, prim: &PrimitiveInstance, opts: RenderOptions) -> RenderedPrimitive {
    let mut intensity = vec![0.0; grid.len()];
    let covered = render_into(grid, prim, opts, &mut intensity);
    let mut mask = vec![false; grid.len()];
    covered.iter().for_each(|&i| mask[i as usize] = true);
    RenderedPrimitive {
        intensity,
        mask,
        volume: covered.len() as u64,
    }
}

/// Clips accumulated intensities into `[0, 1]`.
pub fn clip_to_unit(acc: &[f64]) -> Vec<f32> {
    acc.iter().map(|&v| v.clamp(0.0, 1.0) as f32).collect()
}

/// Voxelwise sum of the fields, clipped to `[0, 1]`.
pub fn merge_intensities(grid: &GridSpec, fields: &[Vec<f64>]) -> Result<Vec<f32>> {
    let mut acc = vec![0.0; grid.len()];
    for f in fields {
        if f.len() != acc.len() {
            return Err(Error::ShapeMismatch {
                expected: acc.len(),
                found: f.len(),
            });
        }
        acc.iter_mut().zip(f).for_each(|(a, b)| *a += b);
    }
    Ok(clip_to_unit(&acc))
}

/// Mask of one primitive as ascending voxel indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMask {
    pub class_id: u32,
    pub covered: Vec<u32>,
}

impl LabelMask {
    pub fn volume(&self) -> u64 {
        self.covered.len() as u64
    }
}

/// Paint order: by mask volume descending; equal volumes keep index order so
/// the later primitive paints last.
pub fn paint_order(volumes: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..volumes.len()).collect();
    order.sort_by(|&a, &b| volumes[b].cmp(&volumes[a]));
    order
}

/// Label volume where each voxel holds the class of the smallest covering
/// primitive (0 for background).
pub fn assign_labels(grid: &GridSpec, masks: &[LabelMask]) -> Vec<u16> {
    let mut labels = vec![0u16; grid.len()];
    let volumes: Vec<u64> = masks.iter().map(LabelMask::volume).collect();
    for k in paint_order(&volumes) {
        let class = u16::try_from(masks[k].class_id).expect("class id fits the label dtype");
        masks[k].covered.iter().for_each(|&i| labels[i as usize] = class);
    }
    labels
}
