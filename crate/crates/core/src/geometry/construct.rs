//! Operators lifting 2D profiles to 3D solids, and shell folding.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{Point2, Point3, Sdf2, Sdf3};

/// Lower clamp for tapered profiles.
pub const MIN_PROFILE_SCALE: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    /// `s(z) = c`
    Constant,
    /// `s(z) = max(c * (1 + a*z/h), 0.05)`
    Linear,
    /// `s(z) = c * (1 + a*cos(pi*z / (2h)))`
    Smooth,
}

/// Cross-section scale as a function of height along the extrusion axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleProfile {
    pub kind: ProfileKind,
    pub base: f64,
    pub taper: f64,
}

impl ScaleProfile {
    pub fn constant(base: f64) -> Self {
        Self {
            kind: ProfileKind::Constant,
            base,
            taper: 0.0,
        }
    }

    /// Heights beyond the slab reuse the end-cap scale.
    #[inline]
    pub fn at(&self, z: f64, half_height: f64) -> f64 {
        let z = z.clamp(-half_height, half_height);
        match self.kind {
            ProfileKind::Constant => self.base,
            ProfileKind::Linear => {
                (self.base * (1.0 + self.taper * z / half_height)).max(MIN_PROFILE_SCALE)
            }
            ProfileKind::Smooth => (self.base
                * (1.0 + self.taper * (PI * z / (2.0 * half_height)).cos()))
            .max(MIN_PROFILE_SCALE),
        }
    }

    /// Upper bound of `s(z)` over `|z| <= h`.
    pub fn max_on_slab(&self) -> f64 {
        match self.kind {
            ProfileKind::Constant => self.base,
            ProfileKind::Linear => self.base * (1.0 + self.taper.abs()),
            ProfileKind::Smooth => self.base * (1.0 + self.taper.max(0.0)),
        }
    }
}

#[inline]
pub(crate) fn extrude_at<F: Sdf2 + ?Sized>(
    f: &F,
    p: Point3,
    half_height: f64,
    profile: &ScaleProfile,
) -> f64 {
    let s = profile.at(p.z, half_height);
    let across = s * f.distance(Point2::new(p.x / s, p.y / s));
    let along = p.z.abs() - half_height;
    let outside = across.max(0.0).hypot(along.max(0.0));
    outside + across.max(along).min(0.0)
}

#[inline]
pub(crate) fn revolve_at<F: Sdf2 + ?Sized>(f: &F, p: Point3, major_radius: f64) -> f64 {
    let rho = p.x.hypot(p.z);
    f.distance(Point2::new(rho - major_radius, p.y))
}

#[inline]
pub(crate) fn hollow_value(mut d: f64, thicknesses: &[f64]) -> f64 {
    d = d.abs();
    for t in thicknesses {
        d = d.abs() - t;
    }
    d
}

/// Sweeps a 2D field along `z` over `[-h, h]`, scaling the cross-section by
/// `profile`, and caps the slab with the exterior-corner/interior overlap.
pub fn extrude<F: Sdf2>(f: F, half_height: f64, profile: ScaleProfile) -> impl Fn(Point3) -> f64 + Send + Sync {
    move |p: Point3| extrude_at(&f, p, half_height, &profile)
}

/// Revolves a 2D field around the `y` axis: `f(sqrt(x^2 + z^2) - R, y)`.
pub fn revolve<F: Sdf2>(f: F, major_radius: f64) -> impl Fn(Point3) -> f64 + Send + Sync {
    move |p: Point3| revolve_at(&f, p, major_radius)
}

/// Shell folding: `|phi|` once, then `|phi| - t` for each thickness in order.
pub fn hollow<F: Sdf3>(phi: F, thicknesses: Vec<f64>) -> impl Fn(Point3) -> f64 + Send + Sync {
    assert!(!thicknesses.is_empty() && thicknesses.iter().all(|&t| t > 0.0));
    move |p: Point3| hollow_value(phi.distance(p), &thicknesses)
}
