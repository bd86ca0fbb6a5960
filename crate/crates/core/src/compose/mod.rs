//! Sample composition: draw primitives, evaluate them on the voxel grid,
//! sum and clip intensities, and label each voxel with its smallest covering
//! object.

mod config;
mod generator;
mod grid;
mod primitive;
mod render;

pub use config::{GeneratorConfig, IntensitySupport, ObjectCount, TransformRanges};
pub use generator::{compose_primitives, Generator, SampleProvenance, GENERATOR_VERSION};
pub use grid::{GridSpec, MIN_GRID_DIM};
pub use primitive::{random_rotation, random_shear_scale, sample_primitive, PrimitiveInstance};
pub use render::{
    assign_labels, clip_to_unit, merge_intensities, paint_order, render_into, render_primitive, LabelMask,
    RenderOptions, RenderedPrimitive,
};
