//! Surface displacement fields and distance-to-intensity mappers, plus the
//! default variant tables.

mod displacement;
mod mapper;
mod variants;

pub use displacement::{Axis, DisplacementSpec, Wave};
pub use mapper::MapperSpec;
pub use variants::{VariantTable, WAVE_DIRECTIONS, WAVE_PHASES};
