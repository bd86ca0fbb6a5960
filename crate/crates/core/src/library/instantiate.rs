use serde::{Deserialize, Serialize};

use super::recipe::{BaseShape, Construction, Interval, ShapeRanges, ShapeRecipe};
use super::RngStream;
use crate::geometry::{gen_polygon, Point3, ProfileKind, ScaleProfile, Shape2, Shape3, StarSpec};

/// A concrete field for one class, with every sampled parameter recorded in
/// `shape`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdfInstance {
    pub class_id: u32,
    pub shape: Shape3,
}

impl SdfInstance {
    #[inline]
    pub fn eval(&self, p: Point3) -> f64 {
        self.shape.eval(p)
    }
}

fn draw(rng: &mut RngStream, iv: Interval) -> f64 {
    rng.uniform_in(iv.lo, iv.hi)
}

fn base_shape(base: BaseShape, ranges: &ShapeRanges, rng: &mut RngStream) -> Shape2 {
    match base {
        BaseShape::Polygon { vertices } => {
            let r = ranges.polygon_radius;
            let poly = gen_polygon(vertices as usize, r.lo, r.hi, rng);
            let offset = poly.centroid();
            Shape2::Shifted {
                inner: Box::new(Shape2::Polygon(poly)),
                offset,
            }
        }
        BaseShape::Star { arms } => {
            let concavity = draw(rng, ranges.star_concavity);
            let scale = draw(rng, ranges.star_scale);
            Shape2::Star(StarSpec {
                arms: arms as u32,
                concavity,
                scale,
            })
        }
    }
}

/// Share of the solid's interior depth that all shell walls together may use.
const HOLLOW_DEPTH_FRACTION: f64 = 0.6;

fn extrusion(profile: Shape2, kind: ProfileKind, ranges: &ShapeRanges, rng: &mut RngStream) -> Shape3 {
    let half_height = draw(rng, ranges.extrude_half_height);
    let taper = match kind {
        ProfileKind::Constant => 0.0,
        _ => draw(rng, ranges.extrude_taper),
    };
    Shape3::Extrude {
        profile,
        half_height,
        scale: ScaleProfile {
            kind,
            base: 1.0,
            taper,
        },
    }
}

fn revolution(profile: Shape2, ring: bool, ranges: &ShapeRanges, rng: &mut RngStream) -> Shape3 {
    let major_radius = if ring {
        draw(rng, ranges.revolve_major_radius)
    } else {
        0.0
    };
    Shape3::Revolve { profile, major_radius }
}

/// Largest sampled value of `-phi` on an `n^3` grid over `[-bound, bound]^3`.
fn interior_depth(shape: &Shape3, bound: f64, n: u32) -> f64 {
    let step = 2.0 * bound / n as f64;
    let coord = |i: u32| -bound + (i as f64 + 0.5) * step;
    let mut depth = f64::NEG_INFINITY;
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                depth = depth.max(-shape.eval(Point3::new(coord(i), coord(j), coord(k))));
            }
        }
    }
    depth
}

/// Walls are shrunk together when they would reach the deepest part of the
/// solid, so the innermost cavity always survives.
fn hollowed(inner: Shape3, layers: u8, ranges: &ShapeRanges, rng: &mut RngStream) -> Shape3 {
    let mut thicknesses: Vec<f64> = (0..layers).map(|_| draw(rng, ranges.hollow_thickness)).collect();
    let total: f64 = thicknesses.iter().sum();
    let depth = interior_depth(&inner, 1.5, 32);
    if depth > 0.0 && total > HOLLOW_DEPTH_FRACTION * depth {
        let k = HOLLOW_DEPTH_FRACTION * depth / total;
        thicknesses.iter_mut().for_each(|t| *t *= k);
    }
    Shape3::Hollow {
        inner: Box::new(inner),
        thicknesses,
    }
}

/// Raw construction before centering and fitting.
///
/// Draw order: native parameters in field order; otherwise the base shape
/// (polygon vertices, or star concavity then scale), then the construction
/// parameters (half-height then taper, or major radius), then one thickness
/// per hollow layer.
fn construct(recipe: &ShapeRecipe, ranges: &ShapeRanges, rng: &mut RngStream) -> Shape3 {
    let base = || recipe.base.expect("derived recipe carries a base shape");
    match recipe.construction {
        Construction::NativeSphere => Shape3::Sphere {
            radius: draw(rng, ranges.sphere_radius),
        },
        Construction::NativeOctahedron => Shape3::Octahedron {
            size: draw(rng, ranges.octahedron_size),
        },
        Construction::NativeCone => {
            let half_angle = draw(rng, ranges.cone_half_angle);
            let height = draw(rng, ranges.cone_height);
            Shape3::Cone { half_angle, height }
        }
        Construction::Extrude { profile } => {
            let b = base_shape(base(), ranges, rng);
            extrusion(b, profile, ranges, rng)
        }
        Construction::Revolve { ring } => {
            let b = base_shape(base(), ranges, rng);
            revolution(b, ring, ranges, rng)
        }
        Construction::HollowExtrude { profile, layers } => {
            let b = base_shape(base(), ranges, rng);
            let solid = extrusion(b, profile, ranges, rng);
            hollowed(solid, layers, ranges, rng)
        }
        Construction::HollowRevolve { ring, layers } => {
            let b = base_shape(base(), ranges, rng);
            let solid = revolution(b, ring, ranges, rng);
            hollowed(solid, layers, ranges, rng)
        }
    }
}

/// Centroid of `{phi <= 0}` estimated on an `n^3` cell-centered grid over
/// `[-bound, bound]^3`. `None` when no cell is inside.
pub fn mask_centroid(shape: &Shape3, bound: f64, n: u32) -> Option<Point3> {
    let step = 2.0 * bound / n as f64;
    let coord = |i: u32| -bound + (i as f64 + 0.5) * step;
    let mut sum = Point3::zeros();
    let mut count = 0usize;
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                let p = Point3::new(coord(i), coord(j), coord(k));
                if shape.eval(p) <= 0.0 {
                    sum += p;
                    count += 1;
                }
            }
        }
    }
    (count > 0).then(|| sum / count as f64)
}

/// Samples the continuous parameters of `recipe` and returns its field.
///
/// Every class except the sphere and octahedron (which are already centered)
/// is recentered on its mask centroid, and any instance whose bounding radius
/// exceeds `ranges.fit_radius` is shrunk uniformly to fit.
pub fn instantiate(recipe: &ShapeRecipe, ranges: &ShapeRanges, rng: &mut RngStream) -> SdfInstance {
    let raw = construct(recipe, ranges, rng);
    let bound = raw.bound_radius();
    let centered = !matches!(
        recipe.construction,
        Construction::NativeSphere | Construction::NativeOctahedron
    );
    let center = if centered {
        mask_centroid(&raw, bound, ranges.centroid_grid).unwrap_or_else(Point3::zeros)
    } else {
        Point3::zeros()
    };
    let reach = bound + center.norm();
    let scale = (ranges.fit_radius / reach).min(1.0);
    let shape = if center == Point3::zeros() && scale == 1.0 {
        raw
    } else {
        Shape3::Placed {
            inner: Box::new(raw),
            center,
            scale,
        }
    };
    SdfInstance {
        class_id: recipe.id,
        shape,
    }
}
