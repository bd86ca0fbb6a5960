use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use super::construct::{extrude_at, hollow_value, revolve_at};
use super::{
    sdf_circle, sdf_cone, sdf_octahedron, sdf_polygon, sdf_sphere, sdf_star, Point2, Point3, Polygon2D,
    ScaleProfile, Sdf2, Sdf3, StarSpec,
};

/// A concrete, fully parameterized 2D field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape2 {
    Polygon(Polygon2D),
    Star(StarSpec),
    Circle { radius: f64 },
    /// `inner(u + offset)`: moves the point `offset` of `inner` to the origin.
    Shifted { inner: Box<Shape2>, offset: Point2 },
}

impl Shape2 {
    #[inline]
    pub fn eval(&self, u: Point2) -> f64 {
        match self {
            Shape2::Polygon(poly) => sdf_polygon(u, poly),
            Shape2::Star(star) => sdf_star(u, star),
            Shape2::Circle { radius } => sdf_circle(u, *radius),
            Shape2::Shifted { inner, offset } => inner.eval(u + offset),
        }
    }

    /// Radius of a disk about the origin containing the interior.
    pub fn bound_radius(&self) -> f64 {
        self.bound_about(Point2::zeros())
    }

    fn bound_about(&self, center: Point2) -> f64 {
        match self {
            Shape2::Polygon(poly) => poly.radius_about(center),
            Shape2::Star(star) => star.scale + center.norm(),
            Shape2::Circle { radius } => radius + center.norm(),
            Shape2::Shifted { inner, offset } => inner.bound_about(center + offset),
        }
    }
}

impl Sdf2 for Shape2 {
    fn distance(&self, u: Point2) -> f64 {
        self.eval(u)
    }
}

/// A concrete, fully parameterized 3D field.
///
/// The tree records every sampled parameter, so serializing it is enough to
/// reproduce the field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape3 {
    Sphere {
        radius: f64,
    },
    Octahedron {
        size: f64,
    },
    Cone {
        half_angle: f64,
        height: f64,
    },
    Extrude {
        profile: Shape2,
        half_height: f64,
        scale: ScaleProfile,
    },
    Revolve {
        profile: Shape2,
        major_radius: f64,
    },
    Hollow {
        inner: Box<Shape3>,
        thicknesses: Vec<f64>,
    },
    /// `scale * inner(p / scale + center)`: recenters `inner` on `center`,
    /// then scales it uniformly. Distances scale with it, so exactness is kept.
    Placed {
        inner: Box<Shape3>,
        center: Point3,
        scale: f64,
    },
}

impl Shape3 {
    #[inline]
    pub fn eval(&self, p: Point3) -> f64 {
        match self {
            Shape3::Sphere { radius } => sdf_sphere(p, *radius),
            Shape3::Octahedron { size } => sdf_octahedron(p, *size),
            Shape3::Cone { half_angle, height } => sdf_cone(p, *half_angle, *height),
            Shape3::Extrude {
                profile,
                half_height,
                scale,
            } => extrude_at(profile, p, *half_height, scale),
            Shape3::Revolve {
                profile,
                major_radius,
            } => revolve_at(profile, p, *major_radius),
            Shape3::Hollow { inner, thicknesses } => hollow_value(inner.eval(p), thicknesses),
            Shape3::Placed { inner, center, scale } => scale * inner.eval(p / *scale + center),
        }
    }

    /// Radius `B` of a ball about the origin such that `phi(p) <= delta`
    /// implies `|p| <= B + sqrt(2) * delta` for every `delta >= 0`. In
    /// particular the mask `{phi <= 0}` lies inside the ball.
    pub fn bound_radius(&self) -> f64 {
        match self {
            Shape3::Sphere { radius } => *radius,
            Shape3::Octahedron { size } => *size,
            Shape3::Cone { half_angle, height } => height.max(height * half_angle.tan()),
            Shape3::Extrude {
                profile,
                half_height,
                scale,
            } => (scale.max_on_slab() * profile.bound_radius()).hypot(*half_height),
            Shape3::Revolve {
                profile,
                major_radius,
            } => major_radius + profile.bound_radius(),
            Shape3::Hollow { inner, thicknesses } => inner.bound_radius() + SQRT_2 * thicknesses.iter().sum::<f64>(),
            Shape3::Placed { inner, center, scale } => scale * (inner.bound_radius() + center.norm()),
        }
    }
}

impl Sdf3 for Shape3 {
    fn distance(&self, p: Point3) -> f64 {
        self.eval(p)
    }
}
