use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::render::{clip_to_unit, render_into, LabelMask, RenderOptions};
use super::{GeneratorConfig, GridSpec, ObjectCount, PrimitiveInstance};
use crate::error::{Error, Result};
use crate::library::{
    build_default_library, derive_aux_seed, derive_sample_seed, RngStream, ShapeLibrary, SubsetSelector,
    RNG_ALGORITHM,
};
use crate::storage::{
    write_sample, DatasetManifest, LabeledVolume, Labels, ManifestStatus, Mode, SampleEntry, FORMAT_VERSION,
};

pub const GENERATOR_VERSION: &str = concat!("fdif-core ", env!("CARGO_PKG_VERSION"));

/// Every random choice made for one sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleProvenance {
    pub index: u64,
    pub master_seed: u64,
    pub sample_seed: u64,
    pub mode: Mode,
    pub grid: GridSpec,
    pub primitives: Vec<PrimitiveInstance>,
}

/// A validated configuration bound to its active library.
#[derive(Clone, Debug)]
pub struct Generator {
    config: GeneratorConfig,
    library: ShapeLibrary,
}

impl Generator {
    pub fn new(config: GeneratorConfig) -> Result<Self> {
        config.validate()?;
        let mut base = match &config.library_file {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                ShapeLibrary::from_json(&text)?
            }
            None => build_default_library(),
        };
        base.ranges = config.ranges.clone();
        let library = match &config.subset {
            SubsetSelector::All => base,
            sel => base.select_subset(sel, &mut RngStream::new(derive_aux_seed(config.seed, "subset")))?,
        };
        if library.max_class_id() > u16::MAX as u32 {
            return Err(Error::Config("class ids must fit in 16 bits".into()));
        }
        Ok(Self { config, library })
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.config
    }

    pub fn library(&self) -> &ShapeLibrary {
        &self.library
    }

    /// Samples in the dataset this configuration describes.
    pub fn sample_count(&self) -> u64 {
        match self.config.mode {
            Mode::Segmentation => self.config.num,
            Mode::Classification => self.config.per_class * self.library.len() as u64,
        }
    }

    pub fn sample_seed(&self, index: u64) -> u64 {
        derive_sample_seed(self.config.seed, index)
    }

    fn render_options(&self) -> RenderOptions {
        RenderOptions {
            support: self.config.intensity_support,
            cull: self.config.cull,
        }
    }

    /// Draws the primitives of sample `index` without rendering them. In
    /// classification mode sample `i` holds class `i mod C` of the active
    /// library.
    pub fn draw_primitives(&self, index: u64) -> Vec<PrimitiveInstance> {
        let mut rng = RngStream::new(self.sample_seed(index));
        let k = match self.config.objects {
            ObjectCount::Fixed(k) => k as u64,
            ObjectCount::Range([lo, hi]) => rng.int_in(lo as u64, hi as u64),
        };
        let class = match self.config.mode {
            Mode::Classification => Some(&self.library.recipes[(index % self.library.len() as u64) as usize]),
            Mode::Segmentation => None,
        };
        (0..k)
            .map(|_| super::sample_primitive(&self.config, &self.library, class, &mut rng))
            .collect()
    }

    /// Renders primitives onto `grid`, fills in their volumes and returns the
    /// clipped intensity and the label volume.
    pub fn compose(&self, grid: &GridSpec, prims: &mut [PrimitiveInstance]) -> (Vec<f32>, Vec<u16>) {
        compose_primitives(grid, prims, self.render_options())
    }

    pub fn generate_sample(&self, index: u64) -> (LabeledVolume, SampleProvenance) {
        let grid = self.config.grid;
        let mut primitives = self.draw_primitives(index);
        let (intensity, dense) = self.compose(&grid, &mut primitives);
        let labels = match self.config.mode {
            Mode::Segmentation => Labels::Dense(dense),
            Mode::Classification => Labels::Class(primitives[0].class_id as u16),
        };
        let provenance = SampleProvenance {
            index,
            master_seed: self.config.seed,
            sample_seed: self.sample_seed(index),
            mode: self.config.mode,
            grid,
            primitives,
        };
        (LabeledVolume { grid, intensity, labels }, provenance)
    }

    fn manifest(&self, samples: Vec<SampleEntry>, error: Option<String>) -> Result<DatasetManifest> {
        let cfg = &self.config;
        Ok(DatasetManifest {
            format_version: FORMAT_VERSION,
            mode: cfg.mode,
            status: if error.is_some() {
                ManifestStatus::Partial
            } else {
                ManifestStatus::Complete
            },
            error,
            master_seed: cfg.seed,
            grid: cfg.grid.dims(),
            num_samples: (cfg.mode == Mode::Segmentation).then_some(cfg.num),
            per_class: (cfg.mode == Mode::Classification).then_some(cfg.per_class),
            library_hash: self.library.content_hash(),
            variant_hash: cfg.variants.content_hash(),
            rng_algorithm: RNG_ALGORITHM.to_string(),
            generator_version: GENERATOR_VERSION.to_string(),
            samples,
            config: serde_json::to_value(cfg)?,
        })
    }

    fn write_one(&self, index: u64, out: &Path) -> Result<SampleEntry> {
        let (volume, provenance) = self.generate_sample(index);
        let file = format!("sample_{index:06}.fdif");
        let prov_file = format!("sample_{index:06}.json");
        let checksum = write_sample(&volume, &out.join(&file))?;
        let prov_path = out.join(&prov_file);
        let mut text = serde_json::to_string_pretty(&provenance)?;
        text.push('\n');
        fs::write(&prov_path, text).map_err(|e| Error::io(&prov_path, e))?;
        Ok(SampleEntry {
            index,
            file,
            provenance: prov_file,
            checksum,
        })
    }

    /// Generates every sample into `out` on a pool of `threads` workers and
    /// writes the manifest. If any sample fails, the manifest is still
    /// written, marked partial, listing the samples that were completed.
    pub fn generate_dataset(
        &self,
        out: &Path,
        threads: usize,
        progress: &(dyn Fn(u64) + Sync),
    ) -> Result<DatasetManifest> {
        fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        let results: Vec<Result<SampleEntry>> = pool.install(|| {
            (0..self.sample_count())
                .into_par_iter()
                .map(|i| {
                    let r = self.write_one(i, out);
                    progress(i);
                    r
                })
                .collect()
        });
        let mut entries = Vec::with_capacity(results.len());
        let mut first_error = None;
        for r in results {
            match r {
                Ok(e) => entries.push(e),
                Err(e) => {
                    first_error.get_or_insert(e);
                }
            }
        }
        let manifest = self.manifest(entries, first_error.as_ref().map(|e| e.to_string()))?;
        manifest.write(out)?;
        match first_error {
            Some(e) => Err(e),
            None => Ok(manifest),
        }
    }
}

/// Renders, merges and labels a set of primitives.
pub fn compose_primitives(
    grid: &GridSpec,
    prims: &mut [PrimitiveInstance],
    opts: RenderOptions,
) -> (Vec<f32>, Vec<u16>) {
    let mut acc = vec![0.0f64; grid.len()];
    let masks: Vec<LabelMask> = prims
        .iter_mut()
        .map(|p| {
            let covered = render_into(grid, p, opts, &mut acc);
            p.volume = covered.len() as u64;
            LabelMask {
                class_id: p.class_id,
                covered,
            }
        })
        .collect();
    (clip_to_unit(&acc), super::assign_labels(grid, &masks))
}
