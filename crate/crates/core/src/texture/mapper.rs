use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};

fn unit_scale() -> f64 {
    1.0
}

/// Maps a signed distance `d` to an intensity. `depth = max(-d, 0)` is the
/// distance below the surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum MapperSpec {
    /// `alpha / (|d| + epsilon)^3`
    InverseCube { alpha: f64, epsilon: f64 },
    /// `alpha * exp(-beta * depth)`
    Exponential { alpha: f64, beta: f64 },
    /// `max(0, alpha - beta * depth)`
    Linear { alpha: f64, beta: f64 },
    /// `alpha - step * floor(depth / width)`
    Floor { alpha: f64, width: f64, step: f64 },
    /// `scale * (floor(depth / width) mod modulus)`
    Modular {
        width: f64,
        modulus: u32,
        #[serde(default = "unit_scale")]
        scale: f64,
    },
    /// `alpha * (1 + sin(2*pi * depth / wavelength)) / 2`, i.e. the sine
    /// shifted into `[0, alpha]`.
    Sinusoidal { alpha: f64, wavelength: f64 },
}

impl MapperSpec {
    #[inline]
    pub fn eval(&self, d: f64) -> f64 {
        let depth = (-d).max(0.0);
        match *self {
            MapperSpec::InverseCube { alpha, epsilon } => alpha / (d.abs() + epsilon).powi(3),
            MapperSpec::Exponential { alpha, beta } => alpha * (-beta * depth).exp(),
            MapperSpec::Linear { alpha, beta } => (alpha - beta * depth).max(0.0),
            MapperSpec::Floor { alpha, width, step } => alpha - step * (depth / width).floor(),
            MapperSpec::Modular { width, modulus, scale } => {
                scale * ((depth / width).floor() % modulus as f64)
            }
            MapperSpec::Sinusoidal { alpha, wavelength } => {
                alpha * 0.5 * (1.0 + (TAU * depth / wavelength).sin())
            }
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            MapperSpec::InverseCube { .. } => "inverse_cube",
            MapperSpec::Exponential { .. } => "exponential",
            MapperSpec::Linear { .. } => "linear",
            MapperSpec::Floor { .. } => "floor",
            MapperSpec::Modular { .. } => "modular",
            MapperSpec::Sinusoidal { .. } => "sinusoidal",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: f64| v.is_finite() && v > 0.0;
        let ok = match *self {
            MapperSpec::InverseCube { alpha, epsilon } => pos(alpha) && pos(epsilon),
            MapperSpec::Exponential { alpha, beta } | MapperSpec::Linear { alpha, beta } => {
                pos(alpha) && beta.is_finite() && beta >= 0.0
            }
            MapperSpec::Floor { alpha, width, step } => pos(alpha) && pos(width) && pos(step),
            MapperSpec::Modular { width, modulus, scale } => pos(width) && modulus >= 1 && scale.is_finite(),
            MapperSpec::Sinusoidal { alpha, wavelength } => pos(alpha) && pos(wavelength),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("{} mapper has out-of-range parameters", self.family())))
        }
    }
}
