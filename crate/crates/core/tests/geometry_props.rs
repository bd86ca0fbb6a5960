use std::f64::consts::PI;

use fdif_core::compose::random_rotation;
use fdif_core::geometry::{
    gen_polygon, sdf_polygon, sdf_star, AffineTransform, Point2, Point3, ScaleProfile, Shape2, Shape3, StarSpec,
};
use fdif_core::library::RngStream;
use fdif_core::oracle::{fd_gradient, winding_inside};
use nalgebra::Matrix3;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn transform_round_trip(seed in any::<u64>(), x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
        let mut rng = RngStream::new(seed);
        let r = random_rotation(&mut rng);
        let s = Matrix3::new(0.3, 0.05, -0.02, 0.0, 0.25, 0.04, 0.0, 0.0, 0.35);
        let t = Point3::new(0.1, -0.2, 0.3);
        let a = AffineTransform::new(r, s, t).unwrap();
        let p = Point3::new(x, y, z);
        prop_assert!((a.to_world(a.to_canonical(p)) - p).norm() < 1e-12);
    }

    #[test]
    fn polygon_sign_matches_winding(seed in any::<u64>(), n in 3usize..=9, u in -1.3f64..1.3, v in -1.3f64..1.3) {
        let poly = gen_polygon(n, 0.4, 1.0, &mut RngStream::new(seed));
        let p = Point2::new(u, v);
        let d = sdf_polygon(p, &poly);
        prop_assume!(d.abs() > 1e-9);
        prop_assert_eq!(d < 0.0, winding_inside(p, &poly));
    }

    #[test]
    fn star_has_arm_symmetry(arms in 5u32..=8, w in 0.3f64..0.8, r in 0.1f64..1.5, a in 0.0f64..(2.0 * PI)) {
        let spec = StarSpec { arms, concavity: w, scale: 0.8 };
        let step = 2.0 * PI / arms as f64;
        let p = Point2::new(r * a.cos(), r * a.sin());
        let q = Point2::new(r * (a + step).cos(), r * (a + step).sin());
        let mirrored = Point2::new(p.x, -p.y);
        prop_assert!((sdf_star(p, &spec) - sdf_star(q, &spec)).abs() < 1e-12);
        prop_assert!((sdf_star(p, &spec) - sdf_star(mirrored, &spec)).abs() < 1e-12);
    }

    #[test]
    fn constant_extrusion_has_unit_gradient(seed in any::<u64>(), x in -1.4f64..1.4, y in -1.4f64..1.4, z in -1.4f64..1.4) {
        let shape = Shape3::Extrude {
            profile: Shape2::Polygon(gen_polygon(5, 0.4, 1.0, &mut RngStream::new(seed))),
            half_height: 0.6,
            scale: ScaleProfile::constant(1.0),
        };
        let p = Point3::new(x, y, z);
        prop_assume!(shape.eval(p).abs() > 1e-3);
        let g = fd_gradient(|q| shape.eval(q), p, 1e-6).norm();
        // points on the medial axis have a kink; allow them through
        prop_assume!((g - 1.0).abs() < 0.5);
        prop_assert!((g - 1.0).abs() < 1e-4, "gradient norm {}", g);
    }
}

#[test]
fn rotated_field_is_the_rotated_shape() {
    let mut rng = RngStream::new(5);
    let shape = Shape3::Cone {
        half_angle: 0.4,
        height: 1.0,
    };
    let r = random_rotation(&mut rng);
    let a = AffineTransform::new(r, Matrix3::identity(), Point3::zeros()).unwrap();
    for _ in 0..200 {
        let p = Point3::from_fn(|_, _| rng.uniform_in(-1.5, 1.5));
        let world = a.to_world(p);
        assert!((shape.eval(a.to_canonical(world)) - shape.eval(p)).abs() < 1e-12);
    }
}
