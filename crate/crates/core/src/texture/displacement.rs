use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::Point3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    #[inline]
    fn pick(self, p: Point3) -> f64 {
        match self {
            Axis::X => p.x,
            Axis::Y => p.y,
            Axis::Z => p.z,
        }
    }
}

/// One sinusoidal term `a * sin(2*pi * k.x + b)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Wave {
    pub amplitude: f64,
    pub frequency: [f64; 3],
    pub phase: f64,
}

impl Wave {
    #[inline]
    fn sin(&self, p: Point3) -> f64 {
        let k = self.frequency;
        (TAU * (k[0] * p.x + k[1] * p.y + k[2] * p.z) + self.phase).sin()
    }
}

/// A displacement field added to a base SDF to texture its surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DisplacementSpec {
    /// No displacement.
    Identity,
    /// `A * sum_j a_j sin(2*pi k_j.x + b_j)`
    PseudoPerlin { amplitude: f64, waves: Vec<Wave> },
    /// `A * sum_j a_j |sin(2*pi k_j.x + b_j)|`
    Turbulence { amplitude: f64, waves: Vec<Wave> },
    /// `A * (1 - |sum_j a_j sin(2*pi k_j.x + b_j)|)`
    Ridge { amplitude: f64, waves: Vec<Wave> },
    /// `A * max(|sin 2*pi f x|, |sin 2*pi f y|, |sin 2*pi f z|)`
    Sharpmax { amplitude: f64, frequency: f64 },
    /// Stripes `A |sin(2*pi f u)|` in a frame rotated by `twist * axis_coord`.
    /// For `axis = z`, `u = x cos(twist z) - y sin(twist z)`; the other axes
    /// permute cyclically.
    TwistedAxis {
        amplitude: f64,
        frequency: f64,
        twist: f64,
        axis: Axis,
    },
    /// `A * (2 frac(f * coord) - 1)`
    Sawtooth { amplitude: f64, frequency: f64, axis: Axis },
}

impl DisplacementSpec {
    /// Octave stack with `a_j = 0.5^j` and `k_j = f * 2^(j-1) * dir_j`.
    pub fn octaves(frequency: f64, terms: usize, dirs: &[[f64; 3]], phases: &[f64]) -> Vec<Wave> {
        assert!(terms <= dirs.len() && terms <= phases.len());
        (0..terms)
            .map(|j| {
                let scale = frequency * 2f64.powi(j as i32);
                let d = dirs[j];
                Wave {
                    amplitude: 0.5f64.powi(j as i32 + 1),
                    frequency: [d[0] * scale, d[1] * scale, d[2] * scale],
                    phase: phases[j],
                }
            })
            .collect()
    }

    #[inline]
    pub fn eval(&self, p: Point3) -> f64 {
        match self {
            DisplacementSpec::Identity => 0.0,
            DisplacementSpec::PseudoPerlin { amplitude, waves } => {
                amplitude * waves.iter().map(|w| w.amplitude * w.sin(p)).sum::<f64>()
            }
            DisplacementSpec::Turbulence { amplitude, waves } => {
                amplitude * waves.iter().map(|w| w.amplitude * w.sin(p).abs()).sum::<f64>()
            }
            DisplacementSpec::Ridge { amplitude, waves } => {
                let smooth: f64 = waves.iter().map(|w| w.amplitude * w.sin(p)).sum();
                amplitude * (1.0 - smooth.abs())
            }
            DisplacementSpec::Sharpmax { amplitude, frequency } => {
                let s = |c: f64| (TAU * frequency * c).sin().abs();
                amplitude * s(p.x).max(s(p.y)).max(s(p.z))
            }
            DisplacementSpec::TwistedAxis {
                amplitude,
                frequency,
                twist,
                axis,
            } => {
                let (a, b, c) = match axis {
                    Axis::Z => (p.x, p.y, p.z),
                    Axis::X => (p.y, p.z, p.x),
                    Axis::Y => (p.z, p.x, p.y),
                };
                let angle = twist * c;
                let u = a * angle.cos() - b * angle.sin();
                amplitude * (TAU * frequency * u).sin().abs()
            }
            DisplacementSpec::Sawtooth {
                amplitude,
                frequency,
                axis,
            } => {
                let t = frequency * axis.pick(p);
                amplitude * (2.0 * (t - t.floor()) - 1.0)
            }
        }
    }

    /// Upper bound of `|eval|`.
    pub fn max_abs(&self) -> f64 {
        let sum = |waves: &[Wave]| waves.iter().map(|w| w.amplitude).sum::<f64>();
        match self {
            DisplacementSpec::Identity => 0.0,
            DisplacementSpec::PseudoPerlin { amplitude, waves }
            | DisplacementSpec::Turbulence { amplitude, waves } => amplitude * sum(waves),
            DisplacementSpec::Ridge { amplitude, waves } => amplitude * 1f64.max(sum(waves) - 1.0),
            DisplacementSpec::Sharpmax { amplitude, .. }
            | DisplacementSpec::TwistedAxis { amplitude, .. }
            | DisplacementSpec::Sawtooth { amplitude, .. } => *amplitude,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            DisplacementSpec::Identity => "identity",
            DisplacementSpec::PseudoPerlin { .. } => "pseudo_perlin",
            DisplacementSpec::Turbulence { .. } => "turbulence",
            DisplacementSpec::Ridge { .. } => "ridge",
            DisplacementSpec::Sharpmax { .. } => "sharpmax",
            DisplacementSpec::TwistedAxis { .. } => "twisted_axis",
            DisplacementSpec::Sawtooth { .. } => "sawtooth",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(format!("{} displacement: {msg}", self.family())));
        match self {
            DisplacementSpec::Identity => Ok(()),
            DisplacementSpec::PseudoPerlin { amplitude, waves }
            | DisplacementSpec::Turbulence { amplitude, waves }
            | DisplacementSpec::Ridge { amplitude, waves } => {
                if !(amplitude.is_finite() && *amplitude > 0.0) {
                    return bad("amplitude must be positive");
                }
                if waves.is_empty() {
                    return bad("needs at least one term");
                }
                let ok = waves.iter().all(|w| {
                    w.amplitude.is_finite()
                        && w.amplitude > 0.0
                        && w.phase.is_finite()
                        && w.frequency.iter().all(|k| k.is_finite())
                });
                if ok {
                    Ok(())
                } else {
                    bad("term amplitudes must be positive and all parameters finite")
                }
            }
            DisplacementSpec::Sharpmax { amplitude, frequency }
            | DisplacementSpec::Sawtooth {
                amplitude, frequency, ..
            } => {
                if amplitude.is_finite() && *amplitude > 0.0 && frequency.is_finite() {
                    Ok(())
                } else {
                    bad("amplitude must be positive and frequency finite")
                }
            }
            DisplacementSpec::TwistedAxis {
                amplitude,
                frequency,
                twist,
                ..
            } => {
                if amplitude.is_finite() && *amplitude > 0.0 && frequency.is_finite() && twist.is_finite() {
                    Ok(())
                } else {
                    bad("amplitude must be positive and parameters finite")
                }
            }
        }
    }
}
