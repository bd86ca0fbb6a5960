use serde::{Deserialize, Serialize};

use super::GridSpec;
use crate::error::{Error, Result};
use crate::library::{Interval, ShapeRanges, SubsetSelector};
use crate::storage::Mode;
use crate::texture::VariantTable;

/// Primitives per sample: a fixed count (`20`) or an inclusive range
/// (`[10, 30]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectCount {
    Fixed(u32),
    Range([u32; 2]),
}

impl ObjectCount {
    pub fn min(&self) -> u32 {
        match *self {
            ObjectCount::Fixed(k) => k,
            ObjectCount::Range([lo, _]) => lo,
        }
    }

    pub fn max(&self) -> u32 {
        match *self {
            ObjectCount::Fixed(k) => k,
            ObjectCount::Range([_, hi]) => hi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntensitySupport {
    /// A primitive contributes intensity only where its mask is set.
    Interior,
    /// A primitive contributes `g(d)` at every voxel.
    Global,
}

/// Ranges for the random placement `x = R S x' + t`.
///
/// `S` is upper triangular: the diagonal is drawn from `scale` and the three
/// off-diagonal entries from `shear`, the latter multiplied by the diagonal
/// entry of their column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformRanges {
    pub scale: Interval,
    pub shear: Interval,
    pub translation: Interval,
}

impl TransformRanges {
    pub fn segmentation() -> Self {
        Self {
            scale: Interval::new(0.2, 0.4),
            shear: Interval::new(-0.2, 0.2),
            translation: Interval::new(-0.6, 0.6),
        }
    }

    pub fn classification() -> Self {
        Self {
            scale: Interval::new(0.35, 0.5),
            shear: Interval::new(-0.1, 0.1),
            translation: Interval::new(0.0, 0.0),
        }
    }
}

/// Everything that determines a dataset. Thread count is deliberately not
/// part of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub mode: Mode,
    pub seed: u64,
    /// Sample count in segmentation mode.
    pub num: u64,
    /// Samples per class in classification mode.
    pub per_class: u64,
    pub grid: GridSpec,
    pub objects: ObjectCount,
    pub subset: SubsetSelector,
    /// Path of an alternative library JSON file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub library_file: Option<String>,
    pub displacement: bool,
    pub mapper: bool,
    pub translation: bool,
    pub intensity_support: IntensitySupport,
    /// Skip voxels that provably lie outside a primitive's mask. Only used
    /// with interior support.
    pub cull: bool,
    pub transform: TransformRanges,
    pub ranges: ShapeRanges,
    pub variants: VariantTable,
}

impl GeneratorConfig {
    pub fn segmentation() -> Self {
        Self {
            mode: Mode::Segmentation,
            seed: 0,
            num: 5000,
            per_class: 50,
            grid: GridSpec::cube(96),
            objects: ObjectCount::Fixed(20),
            subset: SubsetSelector::All,
            library_file: None,
            displacement: true,
            mapper: true,
            translation: true,
            intensity_support: IntensitySupport::Interior,
            cull: true,
            transform: TransformRanges::segmentation(),
            ranges: ShapeRanges::default(),
            variants: VariantTable::default(),
        }
    }

    pub fn classification() -> Self {
        Self {
            mode: Mode::Classification,
            grid: GridSpec::cube(64),
            objects: ObjectCount::Fixed(1),
            translation: false,
            transform: TransformRanges::classification(),
            ..Self::segmentation()
        }
    }

    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Segmentation => Self::segmentation(),
            Mode::Classification => Self::classification(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        let (lo, hi) = (self.objects.min(), self.objects.max());
        if lo == 0 || lo > hi {
            return bad("objects must be >= 1 (and min <= max for a range)");
        }
        if self.mode == Mode::Classification {
            if self.objects != ObjectCount::Fixed(1) {
                return bad("classification mode places exactly one object per sample");
            }
            if self.translation {
                return bad("classification mode requires translation to be disabled");
            }
            if self.per_class == 0 {
                return bad("per_class must be >= 1");
            }
        } else if self.num == 0 {
            return bad("num must be >= 1");
        }
        let t = &self.transform;
        if !t.scale.is_valid() || t.scale.lo <= 0.0 {
            return bad("transform.scale must be a positive interval");
        }
        if !t.shear.is_valid() || !t.translation.is_valid() {
            return bad("transform ranges must be finite with lo <= hi");
        }
        self.ranges.validate().map_err(Error::Config)?;
        self.variants.validate()
    }
}
