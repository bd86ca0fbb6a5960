//! Check suites comparing production code against the `oracle` module.
//!
//! Each suite returns one [`Check`] per measured property. The CLI `validate`
//! command and the acceptance tests both run these.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::compose::{
    compose_primitives, GeneratorConfig, Generator, GridSpec, IntensitySupport, PrimitiveInstance, RenderOptions,
};
use crate::geometry::{gen_polygon, sdf_polygon, Point2, Point3, ProfileKind, ScaleProfile, Shape2, Shape3, StarSpec};
use crate::library::{derive_aux_seed, RngStream};
use crate::oracle::{
    brute_force_labels, dense_surface_distance, eikonal_report, winding_inside, DEFAULT_FD_STEP, MIN_SURFACE_RAYS,
};
use crate::storage::{checksum64, encode_sample};

pub const EIKONAL_TOL: f64 = 1e-2;
pub const EIKONAL_MIN_FRACTION: f64 = 0.99;
pub const EIKONAL_POINTS: usize = 10_000;
pub const SIGN_POLYGONS: usize = 20;
pub const SIGN_POINTS: usize = 10_000;
pub const SIGN_EXCLUSION: f64 = 1e-6;
pub const DISTANCE_TOL: f64 = 1e-2;
pub const DISTANCE_POINTS: usize = 1_000;
pub const LABEL_FIXTURES: usize = 50;
pub const BALANCE_SAMPLES: u64 = 500;
pub const BALANCE_OBJECTS: u32 = 20;
/// Allowed deviation from the expected count, in standard deviations.
pub const BALANCE_SIGMAS: f64 = 4.0;

const SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}/{}: {}", self.suite, self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Eikonal,
    Sign,
    Distance,
    Labels,
    Determinism,
    Distribution,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Eikonal,
        Suite::Sign,
        Suite::Distance,
        Suite::Labels,
        Suite::Determinism,
        Suite::Distribution,
    ];

    pub fn run(self) -> Vec<Check> {
        match self {
            Suite::Eikonal => eikonal_suite(EIKONAL_POINTS),
            Suite::Sign => sign_suite(SIGN_POLYGONS, SIGN_POINTS),
            Suite::Distance => distance_suite(DISTANCE_POINTS),
            Suite::Labels => label_suite(LABEL_FIXTURES),
            Suite::Determinism => determinism_suite(),
            Suite::Distribution => distribution_suite(BALANCE_SAMPLES, BALANCE_OBJECTS),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Eikonal => "eikonal",
            Suite::Sign => "sign",
            Suite::Distance => "distance",
            Suite::Labels => "labels",
            Suite::Determinism => "determinism",
            Suite::Distribution => "distribution",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

fn check(suite: Suite, name: impl Into<String>, passed: bool, detail: String) -> Check {
    Check {
        suite,
        name: name.into(),
        passed,
        detail,
    }
}

fn random_points(rng: &mut RngStream, n: usize, half: f64) -> Vec<Point3> {
    (0..n)
        .map(|_| Point3::from_fn(|_, _| rng.uniform_in(-half, half)))
        .collect()
}

fn centered_polygon(n: usize, rng: &mut RngStream) -> Shape2 {
    let poly = gen_polygon(n, 0.4, 1.0, rng);
    let offset = poly.centroid();
    Shape2::Shifted {
        inner: Box::new(Shape2::Polygon(poly)),
        offset,
    }
}

/// Exact-distance shapes shared by the eikonal and distance suites.
fn reference_shapes() -> Vec<(&'static str, Shape3)> {
    let mut rng = RngStream::new(derive_aux_seed(SEED, "shapes"));
    vec![
        ("sphere", Shape3::Sphere { radius: 0.8 }),
        ("octahedron", Shape3::Octahedron { size: 0.9 }),
        (
            "cone",
            Shape3::Cone {
                half_angle: PI / 6.0,
                height: 1.2,
            },
        ),
        (
            "torus",
            Shape3::Revolve {
                profile: Shape2::Circle { radius: 0.25 },
                major_radius: 0.6,
            },
        ),
        (
            "extrusion-polygon",
            Shape3::Extrude {
                profile: centered_polygon(6, &mut rng),
                half_height: 0.7,
                scale: ScaleProfile::constant(1.0),
            },
        ),
        (
            "extrusion-star",
            Shape3::Extrude {
                profile: Shape2::Star(StarSpec {
                    arms: 5,
                    concavity: 0.5,
                    scale: 0.9,
                }),
                half_height: 0.5,
                scale: ScaleProfile {
                    kind: ProfileKind::Constant,
                    base: 1.0,
                    taper: 0.0,
                },
            },
        ),
    ]
}

/// Unit gradient norm of the analytic fields at random points.
pub fn eikonal_suite(points_per_shape: usize) -> Vec<Check> {
    let start = Instant::now();
    let mut rng = RngStream::new(derive_aux_seed(SEED, "eikonal"));
    let mut out: Vec<Check> = reference_shapes()
        .into_iter()
        .map(|(name, shape)| {
            let pts = random_points(&mut rng, points_per_shape, 1.5);
            let r = eikonal_report(|p| shape.eval(p), &pts, DEFAULT_FD_STEP, EIKONAL_TOL);
            check(
                Suite::Eikonal,
                name,
                r.within_tolerance >= EIKONAL_MIN_FRACTION,
                format!(
                    "{:.4}% of {} points within {EIKONAL_TOL}; worst {:.3e} at {:.3?}",
                    100.0 * r.within_tolerance,
                    r.samples,
                    r.worst_deviation,
                    r.worst_point
                ),
            )
        })
        .collect();
    out.push(elapsed(Suite::Eikonal, start, 10.0));
    out
}

fn elapsed(suite: Suite, start: Instant, limit: f64) -> Check {
    let secs = start.elapsed().as_secs_f64();
    check(suite, "runtime", secs < limit, format!("{secs:.2}s (limit {limit}s)"))
}

/// Polygon field sign against the angle-sum winding test.
pub fn sign_suite(polygons: usize, points: usize) -> Vec<Check> {
    let start = Instant::now();
    let mut rng = RngStream::new(derive_aux_seed(SEED, "sign"));
    let (mut compared, mut agree) = (0usize, 0usize);
    for i in 0..polygons {
        let poly = gen_polygon(3 + i % 7, 0.4, 1.0, &mut rng);
        for _ in 0..points {
            let u = Point2::new(rng.uniform_in(-1.2, 1.2), rng.uniform_in(-1.2, 1.2));
            let d = sdf_polygon(u, &poly);
            if d.abs() < SIGN_EXCLUSION {
                continue;
            }
            compared += 1;
            if (d < 0.0) == winding_inside(u, &poly) {
                agree += 1;
            }
        }
    }
    vec![
        check(
            Suite::Sign,
            "polygon-winding",
            agree == compared && compared > 0,
            format!("{agree}/{compared} points agree over {polygons} polygons"),
        ),
        elapsed(Suite::Sign, start, 10.0),
    ]
}

/// `|phi|` against the ray-marching surface oracle, plus the cone apex.
pub fn distance_suite(total_points: usize) -> Vec<Check> {
    let start = Instant::now();
    let shapes: Vec<(&str, Shape3)> = reference_shapes()
        .into_iter()
        .filter(|(n, _)| matches!(*n, "sphere" | "cone" | "torus" | "extrusion-polygon"))
        .collect();
    let per_shape = total_points.div_ceil(shapes.len());
    let mut rng = RngStream::new(derive_aux_seed(SEED, "distance"));
    let mut out = Vec::new();
    for (name, shape) in &shapes {
        let pts = random_points(&mut rng, per_shape, 1.3);
        let errors: Vec<f64> = pts
            .par_iter()
            .map(|&p| match dense_surface_distance(|q| shape.eval(q), p, MIN_SURFACE_RAYS) {
                Ok(d) => (shape.eval(p).abs() - d).abs(),
                Err(_) => f64::INFINITY,
            })
            .collect();
        let worst = errors.iter().copied().fold(0.0, f64::max);
        out.push(check(
            Suite::Distance,
            *name,
            worst <= DISTANCE_TOL,
            format!("worst | |phi| - oracle | = {worst:.3e} over {per_shape} points"),
        ));
    }
    let (half_angle, height) = (PI / 6.0, 1.2);
    let cone = Shape3::Cone { half_angle, height };
    let apex = Point3::new(0.0, height, 0.0);
    let oracle = dense_surface_distance(|q| cone.eval(q), apex, MIN_SURFACE_RAYS).unwrap_or(f64::INFINITY);
    let phi = cone.eval(apex);
    out.push(check(
        Suite::Distance,
        "cone-apex",
        oracle <= DISTANCE_TOL && phi.abs() <= DISTANCE_TOL,
        format!("oracle distance {oracle:.3e}, phi(apex) = {phi:.3e}"),
    ));
    out.push(elapsed(Suite::Distance, start, 60.0));
    out
}

/// A random small scene for the label comparison. Every third fixture
/// duplicates a primitive under another class to force equal volumes.
pub fn label_fixture(index: usize) -> (GridSpec, Vec<PrimitiveInstance>) {
    let n = 16 + (index * 7 % 17) as u32;
    let grid = GridSpec::cube(n);
    let mut cfg = GeneratorConfig::segmentation();
    cfg.transform.scale = crate::library::Interval::new(0.3, 0.6);
    let gen = Generator::new(cfg).expect("default config is valid");
    let mut rng = RngStream::new(derive_aux_seed(SEED ^ index as u64, "labels"));
    let k = 1 + index % 8;
    let mut prims: Vec<PrimitiveInstance> = (0..k)
        .map(|_| crate::compose::sample_primitive(gen.config(), gen.library(), None, &mut rng))
        .collect();
    if index.is_multiple_of(3) && k >= 2 {
        let mut twin = prims[0].clone();
        twin.class_id = twin.class_id % 109 + 1;
        prims[k - 1] = twin;
    }
    (grid, prims)
}

/// Dense masks computed voxel by voxel, independent of the renderer.
pub fn direct_masks(grid: &GridSpec, prims: &[PrimitiveInstance]) -> Vec<(u32, Vec<bool>)> {
    let [w, h, d] = grid.dims().map(|x| x as usize);
    prims
        .iter()
        .map(|p| {
            let mut mask = Vec::with_capacity(grid.len());
            for k in 0..d {
                for j in 0..h {
                    for i in 0..w {
                        let q = p.transform.to_canonical(grid.center(i, j, k));
                        mask.push(p.sdf.eval(q) + p.displacement.eval(q) <= 0.0);
                    }
                }
            }
            (p.class_id, mask)
        })
        .collect()
}

/// Renderer + painter against the per-voxel brute-force rule.
pub fn label_suite(fixtures: usize) -> Vec<Check> {
    let start = Instant::now();
    let mut mismatched = Vec::new();
    let mut ties = 0usize;
    let mut voxels = 0usize;
    for f in 0..fixtures {
        let (grid, mut prims) = label_fixture(f);
        let (_, labels) = compose_primitives(&grid, &mut prims, RenderOptions::default());
        let reference = brute_force_labels(&grid, &direct_masks(&grid, &prims));
        let mut vols: Vec<u64> = prims.iter().map(|p| p.volume).filter(|&v| v > 0).collect();
        let before = vols.len();
        vols.sort_unstable();
        vols.dedup();
        ties += before - vols.len();
        voxels += grid.len();
        if labels != reference {
            mismatched.push(f);
        }
    }
    vec![
        check(
            Suite::Labels,
            "brute-force-equivalence",
            mismatched.is_empty(),
            format!(
                "{} of {fixtures} fixtures identical ({voxels} voxels, {ties} volume ties); mismatches: {mismatched:?}",
                fixtures - mismatched.len()
            ),
        ),
        elapsed(Suite::Labels, start, 60.0),
    ]
}

/// Byte checksums of `samples` samples generated on a pool of `threads`.
pub fn sample_checksums(gen: &Generator, samples: u64, threads: usize) -> Vec<String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    pool.install(|| {
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let (vol, prov) = gen.generate_sample(i);
                let bytes = encode_sample(&vol).expect("generated volume encodes");
                let prov = serde_json::to_vec(&prov).expect("provenance serializes");
                format!("{}:{}", checksum64(&bytes), checksum64(&prov))
            })
            .collect()
    })
}

/// Regenerates three samples on 1 and on 4 threads and compares bytes.
pub fn determinism_suite() -> Vec<Check> {
    let start = Instant::now();
    let mut cfg = GeneratorConfig::segmentation();
    cfg.seed = 123;
    cfg.grid = GridSpec::cube(48);
    cfg.objects = crate::compose::ObjectCount::Fixed(10);
    let gen = Generator::new(cfg).expect("valid config");
    let one = sample_checksums(&gen, 3, 1);
    let four = sample_checksums(&gen, 3, 4);
    let again = sample_checksums(&gen, 3, 1);
    vec![
        check(
            Suite::Determinism,
            "thread-count-independence",
            one == four && one == again,
            format!("1 thread {one:?} / 4 threads {four:?}"),
        ),
        elapsed(Suite::Determinism, start, 30.0),
    ]
}

/// Per-class counts over `samples * objects` segmentation draws.
pub fn class_counts(samples: u64, objects: u32) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut cfg = GeneratorConfig::segmentation();
    cfg.objects = crate::compose::ObjectCount::Fixed(objects);
    let gen = Generator::new(cfg).expect("valid config");
    let draws: Vec<Vec<PrimitiveInstance>> = (0..samples).into_par_iter().map(|i| gen.draw_primitives(i)).collect();
    let mut classes = vec![0u64; gen.library().len()];
    let mut disp = vec![0u64; gen.config().variants.displacement.len()];
    let mut maps = vec![0u64; gen.config().variants.mapper.len()];
    for p in draws.iter().flatten() {
        classes[(p.class_id - 1) as usize] += 1;
        disp[p.displacement_id.expect("displacement enabled")] += 1;
        maps[p.mapper_id.expect("mapper enabled")] += 1;
    }
    (classes, disp, maps)
}

fn balanced(counts: &[u64]) -> (bool, f64, u64, u64) {
    let total: u64 = counts.iter().sum();
    let e = total as f64 / counts.len() as f64;
    let band = BALANCE_SIGMAS * e.sqrt();
    let (lo, hi) = (*counts.iter().min().unwrap(), *counts.iter().max().unwrap());
    ((lo as f64) >= e - band && (hi as f64) <= e + band, e, lo, hi)
}

/// Class and variant frequencies against their uniform expectation.
pub fn distribution_suite(samples: u64, objects: u32) -> Vec<Check> {
    let (classes, disp, maps) = class_counts(samples, objects);
    [("class-balance", classes), ("displacement-balance", disp), ("mapper-balance", maps)]
        .into_iter()
        .map(|(name, counts)| {
            let (ok, e, lo, hi) = balanced(&counts);
            check(
                Suite::Distribution,
                name,
                ok,
                format!(
                    "{} bins, counts in [{lo}, {hi}], expected {e:.1} +/- {:.1}",
                    counts.len(),
                    BALANCE_SIGMAS * e.sqrt()
                ),
            )
        })
        .collect()
}

/// Renders one primitive with and without culling and reports whether they
/// agree exactly.
pub fn culling_agrees(grid: &GridSpec, prim: &PrimitiveInstance) -> bool {
    let mut a = vec![prim.clone()];
    let mut b = vec![prim.clone()];
    let culled = compose_primitives(grid, &mut a, RenderOptions::default());
    let full = compose_primitives(
        grid,
        &mut b,
        RenderOptions {
            support: IntensitySupport::Interior,
            cull: false,
        },
    );
    culled == full && a[0].volume == b[0].volume
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_sign_suite_passes() {
        assert!(sign_suite(3, 500).iter().all(|c| c.passed));
    }

    #[test]
    fn small_label_suite_passes() {
        let checks = label_suite(6);
        assert!(checks[0].passed, "{}", checks[0]);
    }

    #[test]
    fn fixtures_include_ties() {
        let (grid, mut prims) = label_fixture(3);
        compose_primitives(&grid, &mut prims, RenderOptions::default());
        assert_eq!(prims[0].volume, prims[prims.len() - 1].volume);
        assert_ne!(prims[0].class_id, prims[prims.len() - 1].class_id);
    }
}
