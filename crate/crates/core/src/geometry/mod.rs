//! Closed-form signed distance fields and the operators that build 3D solids
//! from 2D profiles.
//!
//! All evaluation happens in `f64`. Fields are negative inside, zero on the
//! boundary and positive outside.

mod construct;
mod planar;
mod primitives;
mod shape;
mod transform;

pub use construct::{extrude, hollow, revolve, ProfileKind, ScaleProfile};
pub use planar::{gen_polygon, sdf_circle, sdf_polygon, sdf_star, Polygon2D, StarSpec};
pub use primitives::{sdf_cone, sdf_octahedron, sdf_sphere};
pub use shape::{Shape2, Shape3};
pub use transform::AffineTransform;

use nalgebra::{Vector2, Vector3};

/// A point in the normalized 3D domain (the voxel grid spans `[-1, 1]^3`).
pub type Point3 = Vector3<f64>;

/// A point in the plane of a 2D base shape.
pub type Point2 = Vector2<f64>;

/// Anything that can be evaluated as a signed distance over 3D space.
pub trait Sdf3: Send + Sync {
    fn distance(&self, p: Point3) -> f64;
}

/// A signed distance over the plane.
pub trait Sdf2: Send + Sync {
    fn distance(&self, u: Point2) -> f64;
}

impl<F> Sdf3 for F
where
    F: Fn(Point3) -> f64 + Send + Sync,
{
    fn distance(&self, p: Point3) -> f64 {
        self(p)
    }
}

impl<F> Sdf2 for F
where
    F: Fn(Point2) -> f64 + Send + Sync,
{
    fn distance(&self, u: Point2) -> f64 {
        self(u)
    }
}
