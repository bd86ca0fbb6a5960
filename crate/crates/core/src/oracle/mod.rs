//! Slow reference computations used to check the production paths.
//!
//! Nothing here calls into `compose` or the planar sign logic, so a bug in
//! either cannot hide behind a matching bug in its checker.

use nalgebra::{Matrix3, Quaternion, UnitQuaternion};
use serde::Serialize;

use crate::compose::GridSpec;
use crate::error::{Error, Result};
use crate::geometry::{Point2, Point3, Polygon2D};
use crate::library::{mix64, RngStream};

pub const DEFAULT_FD_STEP: f64 = 1e-4;
pub const BISECTION_TOL: f64 = 1e-6;
pub const MIN_SURFACE_RAYS: usize = 10_000;

/// Central-difference gradient.
pub fn fd_gradient<F: Fn(Point3) -> f64>(phi: F, x: Point3, step: f64) -> Point3 {
    assert!(step > 0.0);
    let axis = |i: usize| {
        let mut e = Point3::zeros();
        e[i] = step;
        (phi(x + e) - phi(x - e)) / (2.0 * step)
    };
    Point3::new(axis(0), axis(1), axis(2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradientReport {
    pub samples: usize,
    pub within_tolerance: f64,
    pub worst_deviation: f64,
    pub worst_point: [f64; 3],
}

/// Measures `| |grad phi| - 1 |` at the given points, skipping those with
/// `|phi| <= 2 * step`.
pub fn eikonal_report<F: Fn(Point3) -> f64>(phi: F, points: &[Point3], step: f64, tol: f64) -> GradientReport {
    let mut samples = 0usize;
    let mut good = 0usize;
    let mut worst = (0.0, [0.0; 3]);
    for &p in points {
        if phi(p).abs() <= 2.0 * step {
            continue;
        }
        samples += 1;
        let dev = (fd_gradient(&phi, p, step).norm() - 1.0).abs();
        if dev <= tol {
            good += 1;
        }
        if dev > worst.0 {
            worst = (dev, [p.x, p.y, p.z]);
        }
    }
    GradientReport {
        samples,
        within_tolerance: if samples == 0 { 0.0 } else { good as f64 / samples as f64 },
        worst_deviation: worst.0,
        worst_point: worst.1,
    }
}

/// Settings for [`dense_surface_distance_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceSearch {
    pub rays: usize,
    pub march_step: f64,
    pub max_distance: f64,
    pub tolerance: f64,
}

impl Default for SurfaceSearch {
    fn default() -> Self {
        Self {
            rays: MIN_SURFACE_RAYS,
            march_step: 0.01,
            max_distance: 4.0,
            tolerance: BISECTION_TOL,
        }
    }
}

fn fibonacci_directions(n: usize) -> Vec<Point3> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let y = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - y * y).sqrt();
            let a = golden * i as f64;
            Point3::new(r * a.cos(), y, r * a.sin())
        })
        .collect()
}

fn query_rotation(x: Point3) -> Matrix3<f64> {
    let seed = x.iter().fold(0x5eed_u64, |h, v| mix64(h ^ v.to_bits()));
    let mut rng = RngStream::new(seed);
    let q = Quaternion::new(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    UnitQuaternion::from_quaternion(q).to_rotation_matrix().into_inner()
}

/// Distance from `x` to the boundary of `{phi <= 0}`, found by marching
/// `boundary_samples` rays (a randomly rotated Fibonacci sphere) until the
/// inside/outside state flips and bisecting the crossing.
///
/// Only the sign of `phi` is used.
pub fn dense_surface_distance<F: Fn(Point3) -> f64>(phi: F, x: Point3, boundary_samples: usize) -> Result<f64> {
    dense_surface_distance_with(
        phi,
        x,
        SurfaceSearch {
            rays: boundary_samples,
            ..SurfaceSearch::default()
        },
    )
}

pub fn dense_surface_distance_with<F: Fn(Point3) -> f64>(phi: F, x: Point3, search: SurfaceSearch) -> Result<f64> {
    assert!(search.rays >= MIN_SURFACE_RAYS, "at least {MIN_SURFACE_RAYS} rays");
    let inside = |p: Point3| phi(p) <= 0.0;
    let start = inside(x);
    // first inside/outside flip along `u` within `[from, limit]`
    let cast = |u: Point3, from: f64, limit: f64| -> Option<f64> {
        let bisect = |mut lo: f64, mut hi: f64| {
            while hi - lo > search.tolerance {
                let mid = 0.5 * (lo + hi);
                if inside(x + u * mid) == start {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        };
        if from > 0.0 && inside(x + u * from) != start {
            return Some(bisect(0.0, from));
        }
        let mut prev = from;
        loop {
            let t = (prev + search.march_step).min(limit);
            if t <= prev {
                return None;
            }
            if inside(x + u * t) != start {
                return Some(bisect(prev, t));
            }
            prev = t;
        }
    };

    let rot = query_rotation(x);
    let dirs = fibonacci_directions(search.rays);
    let spacing = (4.0 * std::f64::consts::PI / search.rays as f64).sqrt();
    // hits up to this far beyond the best are kept as refinement candidates
    let margin = 0.05;
    let mut best = f64::INFINITY;
    let mut hits: Vec<(f64, Point3)> = Vec::new();
    // visit rays in a scattered order so an early hit bounds later marches
    let stride = (search.rays as f64 * 0.618_033_988_749_895) as usize | 1;
    let stride = (stride..).find(|s| gcd(*s, search.rays) == 1).unwrap();
    for n in 0..search.rays {
        let u = rot * dirs[(n * stride) % search.rays];
        if let Some(t) = cast(u, 0.0, (best + margin).min(search.max_distance)) {
            best = best.min(t);
            hits.push((t, u));
        }
    }
    if !best.is_finite() {
        return Err(Error::NoBoundary(search.max_distance));
    }

    // Coarse rays pass beside sharp tips and edges; re-search small caps
    // around the most promising directions with much denser rays.
    hits.retain(|&(t, _)| t <= best + margin);
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut seeds: Vec<Point3> = Vec::new();
    for &(_, u) in &hits {
        if seeds.len() == 6 {
            break;
        }
        if seeds.iter().all(|s| s.dot(&u) < (3.0 * spacing).cos()) {
            seeds.push(u);
        }
    }
    const CAP_RAYS: usize = 1000;
    for seed in seeds {
        let mut center = seed;
        let mut cap = 3.0 * spacing;
        for _level in 0..2 {
            let (a, b) = orthonormal_pair(center);
            let mut next = center;
            for i in 0..CAP_RAYS {
                // sunflower pattern over the spherical cap
                let r = cap * ((i as f64 + 0.5) / CAP_RAYS as f64).sqrt();
                let ang = i as f64 * std::f64::consts::PI * (3.0 - 5f64.sqrt());
                let u = (center * r.cos() + (a * ang.cos() + b * ang.sin()) * r.sin()).normalize();
                let from = (best - 2.0 * margin).max(0.0);
                if let Some(t) = cast(u, from, best) {
                    if t < best {
                        best = t;
                        next = u;
                    }
                }
            }
            center = next;
            cap *= 3.0 * (std::f64::consts::PI / CAP_RAYS as f64).sqrt();
        }
    }
    Ok(best)
}

fn orthonormal_pair(n: Point3) -> (Point3, Point3) {
    let helper = if n.x.abs() < 0.9 { Point3::x() } else { Point3::y() };
    let a = n.cross(&helper).normalize();
    (a, n.cross(&a))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reference labeling: for each voxel, the class of the covering mask with
/// the fewest voxels, ties going to the highest primitive index.
///
/// Masks are dense, one `bool` per voxel, in primitive order.
pub fn brute_force_labels(grid: &GridSpec, masks: &[(u32, Vec<bool>)]) -> Vec<u16> {
    let volumes: Vec<usize> = masks.iter().map(|(_, m)| m.iter().filter(|&&b| b).count()).collect();
    (0..grid.len())
        .map(|v| {
            let mut winner: Option<usize> = None;
            for (k, (_, mask)) in masks.iter().enumerate() {
                if !mask[v] {
                    continue;
                }
                winner = match winner {
                    Some(w) if volumes[w] < volumes[k] => Some(w),
                    _ => Some(k),
                };
            }
            winner.map_or(0, |k| masks[k].0 as u16)
        })
        .collect()
}

/// Inside test by summing the angles the polygon edges subtend at `u`.
pub fn winding_inside(u: Point2, poly: &Polygon2D) -> bool {
    let v = &poly.vertices;
    let mut total = 0.0;
    for i in 0..v.len() {
        let a = v[i] - u;
        let b = v[(i + 1) % v.len()] - u;
        total += (a.x * b.y - a.y * b.x).atan2(a.dot(&b));
    }
    total.abs() > std::f64::consts::PI
}

/// Number of inside/outside flips of `{phi <= 0}` along the segment `a -> b`
/// sampled at `samples + 1` points.
pub fn count_sign_changes<F: Fn(Point3) -> f64>(phi: F, a: Point3, b: Point3, samples: usize) -> usize {
    let mut prev = phi(a) <= 0.0;
    let mut changes = 0;
    for i in 1..=samples {
        let p = a + (b - a) * (i as f64 / samples as f64);
        let cur = phi(p) <= 0.0;
        if cur != prev {
            changes += 1;
        }
        prev = cur;
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(p: Point3) -> f64 {
        p.norm() - 1.0
    }

    #[test]
    fn sphere_gradient_is_radial() {
        let g = fd_gradient(sphere, Point3::new(2.0, 0.0, 0.0), DEFAULT_FD_STEP);
        assert!((g - Point3::new(1.0, 0.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn octahedron_gradient_has_unit_length() {
        let oct = |p: Point3| (p.x.abs() + p.y.abs() + p.z.abs() - 1.0) / 3f64.sqrt();
        let g = fd_gradient(oct, Point3::new(0.1, 0.2, 0.15), DEFAULT_FD_STEP);
        assert!((g.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn distance_to_unit_sphere() {
        let d = dense_surface_distance(sphere, Point3::new(2.0, 0.0, 0.0), MIN_SURFACE_RAYS).unwrap();
        assert!((d - 1.0).abs() < 1e-2, "{d}");
        let d = dense_surface_distance(sphere, Point3::new(0.0, 0.3, 0.0), MIN_SURFACE_RAYS).unwrap();
        assert!((d - 0.7).abs() < 1e-2, "{d}");
    }

    #[test]
    fn torus_surface_point_is_at_zero() {
        let (r, a) = (0.6, 0.2);
        let torus = |p: Point3| (p.x.hypot(p.z) - r).hypot(p.y) - a;
        let d = dense_surface_distance(torus, Point3::new(r + a, 0.0, 0.0), MIN_SURFACE_RAYS).unwrap();
        assert!(d < 1e-2);
    }

    #[test]
    fn empty_shape_has_no_boundary() {
        let empty = |_: Point3| 1.0;
        assert!(matches!(
            dense_surface_distance(empty, Point3::zeros(), MIN_SURFACE_RAYS),
            Err(Error::NoBoundary(_))
        ));
    }

    #[test]
    fn brute_force_smallest_wins_and_ties_to_later() {
        let g = GridSpec::cube(8);
        let n = g.len();
        let big = (0..n).map(|i| i < 100).collect::<Vec<_>>();
        let small = (0..n).map(|i| i < 10).collect::<Vec<_>>();
        let twin = (0..n).map(|i| (5..15).contains(&i)).collect::<Vec<_>>();
        let labels = brute_force_labels(&g, &[(1, big), (2, small), (3, twin)]);
        assert_eq!(labels[0], 2);
        assert_eq!(labels[7], 3);
        assert_eq!(labels[50], 1);
        assert_eq!(labels[200], 0);
    }

    #[test]
    fn winding_on_square() {
        let sq = Polygon2D {
            vertices: vec![
                Point2::new(-1.0, -1.0),
                Point2::new(1.0, -1.0),
                Point2::new(1.0, 1.0),
                Point2::new(-1.0, 1.0),
            ],
            r_min: 2f64.sqrt(),
            r_max: 2f64.sqrt(),
        };
        assert!(winding_inside(Point2::new(0.0, 0.0), &sq));
        assert!(winding_inside(Point2::new(0.9, -0.9), &sq));
        assert!(!winding_inside(Point2::new(5.0, 0.0), &sq));
        assert!(!winding_inside(Point2::new(1.1, 0.0), &sq));
    }

    #[test]
    fn sign_changes_across_shell() {
        let shell = |p: Point3| (p.norm() - 0.5).abs() - 0.1;
        let n = count_sign_changes(shell, Point3::new(-1.0, 0.0, 0.0), Point3::new(1.0, 0.0, 0.0), 1000);
        assert_eq!(n, 4);
    }
}
