use serde::{Deserialize, Serialize};

use super::{Axis, DisplacementSpec, MapperSpec};
use crate::error::{Error, Result};
use crate::storage::sha256_hex;

/// Fixed unit directions for the octave stacks (rational, so exact in JSON).
pub const WAVE_DIRECTIONS: [[f64; 3]; 4] = [
    [2.0 / 7.0, 3.0 / 7.0, 6.0 / 7.0],
    [6.0 / 7.0, 2.0 / 7.0, -3.0 / 7.0],
    [3.0 / 7.0, -6.0 / 7.0, 2.0 / 7.0],
    [-2.0 / 7.0, 6.0 / 7.0, 3.0 / 7.0],
];

/// Fixed phase offsets for the octave stacks.
pub const WAVE_PHASES: [f64; 4] = [0.0, 1.1, 2.3, 4.0];

/// The displacement and mapper variants a generator draws from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariantTable {
    pub displacement: Vec<DisplacementSpec>,
    pub mapper: Vec<MapperSpec>,
}

impl Default for VariantTable {
    fn default() -> Self {
        let octaves = |f: f64, terms: usize| DisplacementSpec::octaves(f, terms, &WAVE_DIRECTIONS, &WAVE_PHASES);
        let displacement = vec![
            DisplacementSpec::PseudoPerlin {
                amplitude: 0.06,
                waves: octaves(2.0, 4),
            },
            DisplacementSpec::PseudoPerlin {
                amplitude: 0.03,
                waves: octaves(5.0, 4),
            },
            DisplacementSpec::Turbulence {
                amplitude: 0.05,
                waves: octaves(4.0, 4),
            },
            DisplacementSpec::Ridge {
                amplitude: 0.06,
                waves: octaves(2.0, 4),
            },
            DisplacementSpec::Ridge {
                amplitude: 0.03,
                waves: octaves(5.0, 4),
            },
            DisplacementSpec::Sharpmax {
                amplitude: 0.03,
                frequency: 6.0,
            },
            DisplacementSpec::TwistedAxis {
                amplitude: 0.03,
                frequency: 6.0,
                twist: 3.0,
                axis: Axis::Z,
            },
            DisplacementSpec::Sawtooth {
                amplitude: 0.04,
                frequency: 3.0,
                axis: Axis::X,
            },
            DisplacementSpec::Sawtooth {
                amplitude: 0.02,
                frequency: 8.0,
                axis: Axis::Y,
            },
            DisplacementSpec::Turbulence {
                amplitude: 0.03,
                waves: octaves(8.0, 3),
            },
        ];
        let mapper = vec![
            MapperSpec::InverseCube {
                alpha: 0.1f64.powi(3),
                epsilon: 0.1,
            },
            MapperSpec::InverseCube {
                alpha: 0.05f64.powi(3),
                epsilon: 0.05,
            },
            MapperSpec::Exponential { alpha: 1.0, beta: 5.0 },
            MapperSpec::Exponential { alpha: 1.0, beta: 15.0 },
            MapperSpec::Linear { alpha: 1.0, beta: 2.0 },
            MapperSpec::Floor {
                alpha: 1.0,
                width: 0.05,
                step: 0.2,
            },
            MapperSpec::Modular {
                width: 0.04,
                modulus: 4,
                scale: 1.0 / 3.0,
            },
            MapperSpec::Sinusoidal {
                alpha: 1.0,
                wavelength: 0.1,
            },
            MapperSpec::Sinusoidal {
                alpha: 1.0,
                wavelength: 0.05,
            },
            MapperSpec::Linear { alpha: 1.0, beta: 5.0 },
        ];
        Self { displacement, mapper }
    }
}

impl VariantTable {
    /// Displacement used when displacement is switched off.
    pub fn identity_displacement() -> DisplacementSpec {
        DisplacementSpec::Identity
    }

    /// Mapper applied to every primitive when mapper variation is switched
    /// off: the first inverse-cube entry of the table, or the default
    /// `alpha = eps^3, eps = 0.1` one.
    pub fn uniform_mapper(&self) -> MapperSpec {
        self.mapper
            .iter()
            .find(|m| matches!(m, MapperSpec::InverseCube { .. }))
            .cloned()
            .unwrap_or(MapperSpec::InverseCube {
                alpha: 1e-3,
                epsilon: 0.1,
            })
    }

    pub fn validate(&self) -> Result<()> {
        if self.displacement.is_empty() || self.mapper.is_empty() {
            return Err(Error::Config("variant tables must not be empty".into()));
        }
        self.displacement.iter().try_for_each(DisplacementSpec::validate)?;
        self.mapper.iter().try_for_each(MapperSpec::validate)
    }

    /// SHA-256 of the canonical JSON encoding.
    pub fn content_hash(&self) -> String {
        sha256_hex(&serde_json::to_vec(self).expect("variant table serializes"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sizes() {
        let t = VariantTable::default();
        assert_eq!(t.displacement.len(), 10);
        assert_eq!(t.mapper.len(), 10);
        t.validate().unwrap();
    }

    #[test]
    fn covers_all_families() {
        let t = VariantTable::default();
        let mut d: Vec<_> = t.displacement.iter().map(|s| s.family()).collect();
        d.sort_unstable();
        d.dedup();
        assert_eq!(d.len(), 6);
        let mut m: Vec<_> = t.mapper.iter().map(|s| s.family()).collect();
        m.sort_unstable();
        m.dedup();
        assert_eq!(m.len(), 6);
    }

    #[test]
    fn directions_are_unit() {
        for d in WAVE_DIRECTIONS {
            let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            assert!((n - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn mapper_peaks_are_normalized() {
        let t = VariantTable::default();
        for m in &t.mapper {
            let peak = (0..=4000)
                .map(|i| m.eval(-(i as f64) / 2000.0))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((peak - 1.0).abs() < 1e-9, "{} peak {peak}", m.family());
        }
    }

    #[test]
    fn json_round_trip_and_stable_hash() {
        let t = VariantTable::default();
        let json = serde_json::to_string(&t).unwrap();
        let back: VariantTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.content_hash(), t.content_hash());
    }

    #[test]
    fn uniform_mapper_is_inverse_cube() {
        assert!(matches!(
            VariantTable::default().uniform_mapper(),
            MapperSpec::InverseCube { epsilon, .. } if epsilon == 0.1
        ));
    }
}
