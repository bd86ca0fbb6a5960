use nalgebra::{Matrix3, Quaternion, UnitQuaternion};
use serde::{Deserialize, Serialize};

use super::GeneratorConfig;
use crate::geometry::{AffineTransform, Point3};
use crate::library::{instantiate, RngStream, SdfInstance, ShapeLibrary, ShapeRecipe};
use crate::texture::{DisplacementSpec, MapperSpec, VariantTable};

/// One placed, textured object of a sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveInstance {
    pub class_id: u32,
    pub sdf: SdfInstance,
    pub transform: AffineTransform,
    /// Row of the displacement table, `None` when displacement is off.
    pub displacement_id: Option<usize>,
    pub displacement: DisplacementSpec,
    /// Row of the mapper table, `None` when the uniform mapper is used.
    pub mapper_id: Option<usize>,
    pub mapper: MapperSpec,
    /// Voxel count of the mask, filled in by rendering.
    pub volume: u64,
}

impl PrimitiveInstance {
    /// Displaced field `phi(x') + delta(x')` at a canonical point.
    #[inline]
    pub fn displaced(&self, q: Point3) -> f64 {
        self.sdf.eval(q) + self.displacement.eval(q)
    }

    /// Canonical radius beyond which the displaced field is positive.
    pub fn cull_radius(&self) -> f64 {
        self.sdf.shape.bound_radius() + std::f64::consts::SQRT_2 * self.displacement.max_abs() + 1e-9
    }
}

/// Rotation from a normalized quaternion of four standard normals, which is
/// uniform over SO(3).
pub fn random_rotation(rng: &mut RngStream) -> Matrix3<f64> {
    loop {
        let q = Quaternion::new(rng.normal(), rng.normal(), rng.normal(), rng.normal());
        if q.norm() > 1e-6 {
            return UnitQuaternion::from_quaternion(q).to_rotation_matrix().into_inner();
        }
    }
}

/// Upper-triangular shear times a positive diagonal scale.
pub fn random_shear_scale(config: &GeneratorConfig, rng: &mut RngStream) -> Matrix3<f64> {
    let r = &config.transform;
    let s: [f64; 3] = std::array::from_fn(|_| rng.uniform_in(r.scale.lo, r.scale.hi));
    let [a, b, c]: [f64; 3] = std::array::from_fn(|_| rng.uniform_in(r.shear.lo, r.shear.hi));
    Matrix3::new(1.0, a, b, 0.0, 1.0, c, 0.0, 0.0, 1.0) * Matrix3::from_diagonal(&s.into())
}

fn pick_variant<T: Clone>(enabled: bool, table: &[T], fallback: T, rng: &mut RngStream) -> (Option<usize>, T) {
    if enabled {
        let i = rng.below(table.len() as u64) as usize;
        (Some(i), table[i].clone())
    } else {
        (None, fallback)
    }
}

/// Draws one primitive.
///
/// Draw order: class (skipped when `class` is given), the class's shape
/// parameters, rotation, scale, shear, translation (if enabled), displacement
/// row (if enabled), mapper row (if enabled).
pub fn sample_primitive(
    config: &GeneratorConfig,
    library: &ShapeLibrary,
    class: Option<&ShapeRecipe>,
    rng: &mut RngStream,
) -> PrimitiveInstance {
    let recipe = match class {
        Some(r) => r,
        None => &library.recipes[rng.below(library.len() as u64) as usize],
    };
    let sdf = instantiate(recipe, &config.ranges, rng);
    let rotation = random_rotation(rng);
    let shear_scale = random_shear_scale(config, rng);
    let translation = if config.translation {
        let t = &config.transform.translation;
        Point3::from_fn(|_, _| rng.uniform_in(t.lo, t.hi))
    } else {
        Point3::zeros()
    };
    let transform = AffineTransform::new(rotation, shear_scale, translation).expect("sampled transform is valid");
    let (displacement_id, displacement) = pick_variant(
        config.displacement,
        &config.variants.displacement,
        VariantTable::identity_displacement(),
        rng,
    );
    let (mapper_id, mapper) = pick_variant(config.mapper, &config.variants.mapper, config.variants.uniform_mapper(), rng);
    PrimitiveInstance {
        class_id: recipe.id,
        sdf,
        transform,
        displacement_id,
        displacement,
        mapper_id,
        mapper,
        volume: 0,
    }
}
