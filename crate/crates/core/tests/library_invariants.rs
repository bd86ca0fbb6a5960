use fdif_core::geometry::{Point3, Shape3};
use fdif_core::library::{build_default_library, instantiate, Category, Construction, RngStream, ShapeLibrary};
use fdif_core::oracle::count_sign_changes;

fn unit_vector(rng: &mut RngStream) -> Point3 {
    loop {
        let v = Point3::new(rng.normal(), rng.normal(), rng.normal());
        if v.norm() > 1e-9 {
            return v.normalize();
        }
    }
}

#[test]
fn every_class_fits_the_canonical_ball() {
    let lib = build_default_library();
    let mut rng = RngStream::new(77);
    for recipe in &lib.recipes {
        for _ in 0..3 {
            let inst = instantiate(recipe, &lib.ranges, &mut rng);
            for _ in 0..400 {
                let r = rng.uniform_in(1.5, 3.0);
                let p = unit_vector(&mut rng) * r;
                assert!(inst.eval(p) > 0.0, "{} reaches {p:?}", recipe.name);
            }
            let reach = inst.shape.bound_radius();
            assert!(reach <= lib.ranges.fit_radius + 1e-12, "{}: bound {reach}", recipe.name);
        }
    }
}

#[test]
fn every_class_has_a_nonempty_centered_mask() {
    let lib = build_default_library();
    let mut rng = RngStream::new(78);
    for recipe in &lib.recipes {
        let inst = instantiate(recipe, &lib.ranges, &mut rng);
        let c = fdif_core::library::mask_centroid(&inst.shape, 1.5, 40)
            .unwrap_or_else(|| panic!("{} has an empty mask", recipe.name));
        assert!(c.norm() < 0.1, "{} centroid {c:?}", recipe.name);
    }
}

fn unplaced(shape: &Shape3) -> &Shape3 {
    match shape {
        Shape3::Placed { inner, .. } => unplaced(inner),
        other => other,
    }
}

#[test]
fn hollow_classes_have_shells() {
    let lib = build_default_library();
    let mut rng = RngStream::new(79);
    let hollow: Vec<_> = lib
        .recipes
        .iter()
        .filter(|r| matches!(r.construction, Construction::HollowExtrude { .. } | Construction::HollowRevolve { .. }))
        .collect();
    assert_eq!(hollow.len(), 51);
    for recipe in hollow {
        let inst = instantiate(recipe, &lib.ranges, &mut rng);
        let hollow = unplaced(&inst.shape);
        let Shape3::Hollow { inner: solid, .. } = hollow else {
            panic!("{} is not hollow", recipe.name)
        };
        // a line through the deepest interior point of the solid must cross
        // every shell wall
        let mut deepest = (f64::INFINITY, Point3::zeros());
        let n = 24;
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let p = Point3::new(i as f64, j as f64, k as f64) / (n - 1) as f64 * 3.0
                        - Point3::repeat(1.5);
                    let v = solid.eval(p);
                    if v < deepest.0 {
                        deepest = (v, p);
                    }
                }
            }
        }
        let p0 = deepest.1;
        let changes = (0..3)
            .map(|a| {
                let mut e = Point3::zeros();
                e[a] = 4.0;
                count_sign_changes(|q| hollow.eval(q), p0 - e, p0 + e, 40_000)
            })
            .max()
            .unwrap();
        assert!(changes >= 4, "{}: {changes} sign changes", recipe.name);
    }
}

#[test]
fn categories_partition_the_library() {
    let lib = build_default_library();
    let count = |c: Category| lib.recipes.iter().filter(|r| r.category() == c).count();
    assert_eq!(count(Category::Native), 3);
    assert_eq!(count(Category::Extrusion), 33);
    assert_eq!(count(Category::RevolutionOrHollow), 73);
}

#[test]
fn instances_round_trip_through_json() {
    let lib = build_default_library();
    let mut rng = RngStream::new(80);
    for recipe in lib.recipes.iter().step_by(7) {
        let inst = instantiate(recipe, &lib.ranges, &mut rng);
        let text = serde_json::to_string(&inst).unwrap();
        let back: fdif_core::library::SdfInstance = serde_json::from_str(&text).unwrap();
        for _ in 0..50 {
            let p = Point3::from_fn(|_, _| rng.uniform_in(-1.5, 1.5));
            assert_eq!(inst.eval(p).to_bits(), back.eval(p).to_bits());
        }
    }
}

#[test]
fn library_file_round_trip_is_byte_identical() {
    let lib = build_default_library();
    let text = lib.to_json_pretty();
    let again = ShapeLibrary::from_json(&text).unwrap().to_json_pretty();
    assert_eq!(text, again);
}
