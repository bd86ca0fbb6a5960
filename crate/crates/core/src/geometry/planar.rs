//! 2D base shapes: irregular polygons, stars and circles.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::Point2;
use crate::library::RngStream;

/// A simple polygon with counter-clockwise vertices.
///
/// Built by [`gen_polygon`], one vertex per angular sector, which keeps the
/// contour free of self-intersections.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon2D {
    pub vertices: Vec<Point2>,
    pub r_min: f64,
    pub r_max: f64,
}

impl Polygon2D {
    /// Largest vertex distance from `center`.
    pub fn radius_about(&self, center: Point2) -> f64 {
        self.vertices
            .iter()
            .map(|v| (v - center).norm())
            .fold(0.0, f64::max)
    }

    /// Area centroid (shoelace).
    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len();
        let mut area2 = 0.0;
        let mut c = Point2::zeros();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let cross = a.x * b.y - b.x * a.y;
            area2 += cross;
            c += (a + b) * cross;
        }
        if area2.abs() < 1e-300 {
            return self.vertices.iter().sum::<Point2>() / n as f64;
        }
        c / (3.0 * area2)
    }
}

/// Star with `arms` tips at radius `scale`.
///
/// Tips lie at angles `2*pi*k/arms`; the cusps between them sit at radius
/// `(1 - concavity) * scale * cos(pi/arms)`, so `concavity = 0` degenerates to a
/// regular polygon and `concavity = 1` pinches the cusps to the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarSpec {
    pub arms: u32,
    pub concavity: f64,
    pub scale: f64,
}

impl StarSpec {
    pub fn cusp_radius(&self) -> f64 {
        (1.0 - self.concavity) * self.scale * (PI / self.arms as f64).cos()
    }
}

/// Samples an `n`-gon with one vertex per sector `[2*pi*i/n, 2*pi*(i+1)/n)`
/// and radius uniform in `[r_min, r_max]`.
///
/// Draw order per vertex: angle fraction, then radius.
pub fn gen_polygon(n: usize, r_min: f64, r_max: f64, rng: &mut RngStream) -> Polygon2D {
    assert!((3..=9).contains(&n), "polygon vertex count {n} outside 3..=9");
    assert!(0.0 < r_min && r_min <= r_max, "bad polygon radii [{r_min}, {r_max}]");
    let vertices = (0..n)
        .map(|i| {
            let angle = TAU * (i as f64 + rng.uniform()) / n as f64;
            let radius = rng.uniform_in(r_min, r_max);
            Point2::new(radius * angle.cos(), radius * angle.sin())
        })
        .collect();
    Polygon2D {
        vertices,
        r_min,
        r_max,
    }
}

#[inline]
pub fn sdf_circle(u: Point2, r: f64) -> f64 {
    u.norm() - r
}

/// Signed distance to a polygon: minimum edge distance, negative where the
/// winding number is nonzero.
pub fn sdf_polygon(u: Point2, poly: &Polygon2D) -> f64 {
    let v = &poly.vertices;
    let n = v.len();
    let mut d2 = f64::INFINITY;
    let mut winding = 0i32;
    let mut j = n - 1;
    for i in 0..n {
        let a = v[j];
        let b = v[i];
        let e = b - a;
        let w = u - a;
        let t = (w.dot(&e) / e.dot(&e)).clamp(0.0, 1.0);
        let r = w - e * t;
        d2 = d2.min(r.dot(&r));

        // signed crossing of the rightward ray from u
        let side = e.x * w.y - e.y * w.x;
        if a.y <= u.y {
            if b.y > u.y && side > 0.0 {
                winding += 1;
            }
        } else if b.y <= u.y && side < 0.0 {
            winding -= 1;
        }
        j = i;
    }
    let d = d2.sqrt();
    if winding != 0 {
        -d
    } else {
        d
    }
}

/// Signed distance to a star.
///
/// The query angle is folded into the half-sector `[0, pi/n]` between a cusp
/// (angle 0) and a tip (angle `pi/n`); the distance is taken to the single
/// cusp-to-tip edge, with the sign given by the side of that edge.
pub fn sdf_star(u: Point2, spec: &StarSpec) -> f64 {
    let half = PI / spec.arms as f64;
    let rho = u.norm();
    let theta = u.y.atan2(u.x);
    let folded = ((theta).rem_euclid(2.0 * half) - half).abs();
    let q = Point2::new(rho * folded.cos(), rho * folded.sin());

    let tip = Point2::new(spec.scale * half.cos(), spec.scale * half.sin());
    let cusp = Point2::new(spec.cusp_radius(), 0.0);
    let e = tip - cusp;
    let w = q - cusp;
    let t = (w.dot(&e) / e.dot(&e)).clamp(0.0, 1.0);
    let d = (w - e * t).norm();
    if e.x * w.y - e.y * w.x > 0.0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equilateral() -> Polygon2D {
        let vertices = (0..3)
            .map(|i| {
                let a = TAU * i as f64 / 3.0;
                Point2::new(a.cos(), a.sin())
            })
            .collect();
        Polygon2D {
            vertices,
            r_min: 1.0,
            r_max: 1.0,
        }
    }

    #[test]
    fn triangle_centroid_is_minus_inradius() {
        // unit circumradius: inradius 1/2
        let d = sdf_polygon(Point2::zeros(), &equilateral());
        assert!((d + 0.5).abs() < 1e-12, "{d}");
    }

    #[test]
    fn vertices_are_on_boundary() {
        let mut rng = RngStream::new(1);
        for n in 3..=9 {
            let poly = gen_polygon(n, 0.4, 1.0, &mut rng);
            for v in &poly.vertices {
                assert!(sdf_polygon(*v, &poly).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn far_point_is_bounded_by_triangle_inequality() {
        let mut rng = RngStream::new(2);
        let poly = gen_polygon(6, 0.4, 1.0, &mut rng);
        let far = Point2::new(10.0, 0.0);
        let d = sdf_polygon(far, &poly);
        assert!((9.0..=11.0).contains(&d), "{d}");
    }

    #[test]
    fn gen_polygon_sectors_and_radii() {
        let mut rng = RngStream::new(3);
        for n in 3..=9 {
            let poly = gen_polygon(n, 0.4, 1.0, &mut rng);
            assert_eq!(poly.vertices.len(), n);
            for (i, v) in poly.vertices.iter().enumerate() {
                let r = v.norm();
                assert!((0.4 - 1e-12..=1.0 + 1e-12).contains(&r));
                let a = v.y.atan2(v.x).rem_euclid(TAU);
                let lo = TAU * i as f64 / n as f64;
                let hi = TAU * (i + 1) as f64 / n as f64;
                assert!(a >= lo - 1e-12 && a < hi + 1e-12, "vertex {i} angle {a}");
            }
        }
    }

    #[test]
    fn gen_polygon_is_deterministic() {
        let a = gen_polygon(7, 0.4, 1.0, &mut RngStream::new(99));
        let b = gen_polygon(7, 0.4, 1.0, &mut RngStream::new(99));
        assert_eq!(a, b);
    }

    #[test]
    fn centroid_of_regular_polygon_is_origin() {
        let c = equilateral().centroid();
        assert!(c.norm() < 1e-12);
    }

    fn star() -> StarSpec {
        StarSpec {
            arms: 5,
            concavity: 0.5,
            scale: 0.8,
        }
    }

    #[test]
    fn star_origin_is_inside() {
        for arms in 5..=8 {
            let s = StarSpec { arms, ..star() };
            assert!(sdf_star(Point2::zeros(), &s) < 0.0);
        }
    }

    #[test]
    fn star_tips_and_cusps_on_boundary() {
        let s = star();
        for k in 0..5 {
            let a = TAU * k as f64 / 5.0;
            let tip = Point2::new(s.scale * a.cos(), s.scale * a.sin());
            assert!(sdf_star(tip, &s).abs() < 1e-12);
            let c = a + PI / 5.0;
            let cusp = Point2::new(s.cusp_radius() * c.cos(), s.cusp_radius() * c.sin());
            assert!(sdf_star(cusp, &s).abs() < 1e-12);
        }
    }

    #[test]
    fn star_rotation_symmetry() {
        let s = StarSpec {
            arms: 7,
            concavity: 0.4,
            scale: 0.9,
        };
        let rot = nalgebra::Rotation2::new(TAU / 7.0);
        let mut rng = RngStream::new(8);
        for _ in 0..1000 {
            let u = Point2::new(rng.uniform_in(-1.5, 1.5), rng.uniform_in(-1.5, 1.5));
            let a = sdf_star(u, &s);
            let b = sdf_star(rot * u, &s);
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn zero_concavity_star_matches_regular_polygon() {
        let s = StarSpec {
            arms: 6,
            concavity: 0.0,
            scale: 1.0,
        };
        let poly = Polygon2D {
            vertices: (0..6)
                .map(|k| {
                    let a = TAU * k as f64 / 6.0;
                    Point2::new(a.cos(), a.sin())
                })
                .collect(),
            r_min: 1.0,
            r_max: 1.0,
        };
        let mut rng = RngStream::new(4);
        for _ in 0..2000 {
            let u = Point2::new(rng.uniform_in(-2.0, 2.0), rng.uniform_in(-2.0, 2.0));
            assert!((sdf_star(u, &s) - sdf_polygon(u, &poly)).abs() < 1e-12);
        }
    }
}
