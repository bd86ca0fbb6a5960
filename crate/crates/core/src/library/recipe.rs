use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::geometry::ProfileKind;

/// How a class builds its solid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    NativeSphere,
    NativeOctahedron,
    NativeCone,
    Extrude { profile: ProfileKind },
    /// `ring = true` samples a major radius `R > 0`; otherwise `R = 0`.
    Revolve { ring: bool },
    HollowExtrude { profile: ProfileKind, layers: u8 },
    HollowRevolve { ring: bool, layers: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseShape {
    Polygon { vertices: u8 },
    Star { arms: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Native,
    Extrusion,
    RevolutionOrHollow,
}

/// One shape class: its structure is fixed, continuous parameters are drawn
/// per instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeRecipe {
    pub id: u32,
    pub name: String,
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseShape>,
}

impl ShapeRecipe {
    pub fn category(&self) -> Category {
        match self.construction {
            Construction::NativeSphere | Construction::NativeOctahedron | Construction::NativeCone => {
                Category::Native
            }
            Construction::Extrude { .. } => Category::Extrusion,
            _ => Category::RevolutionOrHollow,
        }
    }

    pub fn construction_label(&self) -> String {
        let profile = |p: ProfileKind| match p {
            ProfileKind::Constant => "constant",
            ProfileKind::Linear => "linear",
            ProfileKind::Smooth => "smooth",
        };
        let ring = |r: bool| if r { "ring" } else { "solid" };
        match self.construction {
            Construction::NativeSphere => "sphere".into(),
            Construction::NativeOctahedron => "octahedron".into(),
            Construction::NativeCone => "cone".into(),
            Construction::Extrude { profile: p } => format!("extrude-{}", profile(p)),
            Construction::Revolve { ring: r } => format!("revolve-{}", ring(r)),
            Construction::HollowExtrude { profile: p, layers } => {
                format!("hollow{layers}-extrude-{}", profile(p))
            }
            Construction::HollowRevolve { ring: r, layers } => format!("hollow{layers}-revolve-{}", ring(r)),
        }
    }

    pub fn base_label(&self) -> String {
        match self.base {
            None => "-".into(),
            Some(BaseShape::Polygon { vertices }) => format!("polygon{vertices}"),
            Some(BaseShape::Star { arms }) => format!("star{arms}"),
        }
    }
}

/// Closed interval serialized as `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn is_valid(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi
    }
}

impl From<[f64; 2]> for Interval {
    fn from(v: [f64; 2]) -> Self {
        Self { lo: v[0], hi: v[1] }
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Ranges for the continuous per-instance parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ShapeRanges {
    pub sphere_radius: Interval,
    pub octahedron_size: Interval,
    pub cone_half_angle: Interval,
    pub cone_height: Interval,
    pub polygon_radius: Interval,
    pub star_concavity: Interval,
    pub star_scale: Interval,
    pub extrude_half_height: Interval,
    pub extrude_taper: Interval,
    pub revolve_major_radius: Interval,
    pub hollow_thickness: Interval,
    /// Instances whose bounding radius exceeds this are shrunk uniformly.
    pub fit_radius: f64,
    /// Resolution of the canonical grid used to locate the mask centroid.
    pub centroid_grid: u32,
}

impl Default for ShapeRanges {
    fn default() -> Self {
        Self {
            sphere_radius: Interval::new(0.5, 1.0),
            octahedron_size: Interval::new(0.5, 1.0),
            cone_half_angle: Interval::new(PI / 12.0, PI / 4.0),
            cone_height: Interval::new(0.8, 1.4),
            polygon_radius: Interval::new(0.4, 1.0),
            star_concavity: Interval::new(0.3, 0.8),
            star_scale: Interval::new(0.6, 1.0),
            extrude_half_height: Interval::new(0.4, 1.0),
            extrude_taper: Interval::new(-0.6, 0.6),
            revolve_major_radius: Interval::new(0.3, 0.8),
            hollow_thickness: Interval::new(0.05, 0.15),
            fit_radius: 1.4,
            centroid_grid: 32,
        }
    }
}

impl ShapeRanges {
    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("sphere_radius", self.sphere_radius),
            ("octahedron_size", self.octahedron_size),
            ("cone_height", self.cone_height),
            ("polygon_radius", self.polygon_radius),
            ("star_scale", self.star_scale),
            ("extrude_half_height", self.extrude_half_height),
            ("revolve_major_radius", self.revolve_major_radius),
            ("hollow_thickness", self.hollow_thickness),
        ];
        for (name, iv) in positive {
            if !iv.is_valid() || iv.lo <= 0.0 {
                return Err(format!("{name} must be a positive interval"));
            }
        }
        let a = self.cone_half_angle;
        if !a.is_valid() || a.lo <= 0.0 || a.hi >= PI / 2.0 {
            return Err("cone_half_angle must lie in (0, pi/2)".into());
        }
        let c = self.star_concavity;
        if !c.is_valid() || c.lo < 0.0 || c.hi >= 1.0 {
            return Err("star_concavity must lie in [0, 1)".into());
        }
        let t = self.extrude_taper;
        if !t.is_valid() || t.lo <= -1.0 || t.hi >= 1.0 {
            return Err("extrude_taper must lie in (-1, 1)".into());
        }
        if !(self.fit_radius.is_finite() && self.fit_radius > 0.0) {
            return Err("fit_radius must be positive".into());
        }
        if self.centroid_grid < 4 {
            return Err("centroid_grid must be at least 4".into());
        }
        Ok(())
    }
}
