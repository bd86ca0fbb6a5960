use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::Point3;
use crate::error::Error;

const ORTHO_TOL: f64 = 1e-9;

/// Placement of a primitive: world point `x = R * S * x' + t`.
///
/// `rotation` is a proper rotation, `shear_scale` is an invertible
/// upper-triangular shear times a positive diagonal scale. The inverse of
/// `R * S` is computed once, at construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TransformRepr", into = "TransformRepr")]
pub struct AffineTransform {
    rotation: Matrix3<f64>,
    shear_scale: Matrix3<f64>,
    translation: Point3,
    linear: Matrix3<f64>,
    inverse: Matrix3<f64>,
}

impl AffineTransform {
    pub fn new(rotation: Matrix3<f64>, shear_scale: Matrix3<f64>, translation: Point3) -> Result<Self, Error> {
        let finite = rotation.iter().chain(shear_scale.iter()).chain(translation.iter()).all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidTransform("non-finite entry".into()));
        }
        let gram = rotation.transpose() * rotation - Matrix3::identity();
        if gram.amax() > ORTHO_TOL || (rotation.determinant() - 1.0).abs() > ORTHO_TOL {
            return Err(Error::InvalidTransform("rotation is not a proper orthonormal matrix".into()));
        }
        let linear = rotation * shear_scale;
        let inverse = linear
            .try_inverse()
            .filter(|m| m.iter().all(|v| v.is_finite()))
            .ok_or_else(|| Error::InvalidTransform("shear/scale matrix is singular".into()))?;
        Ok(Self {
            rotation,
            shear_scale,
            translation,
            linear,
            inverse,
        })
    }

    pub fn identity() -> Self {
        Self::new(Matrix3::identity(), Matrix3::identity(), Point3::zeros()).expect("identity is valid")
    }

    pub fn translation_only(t: Point3) -> Result<Self, Error> {
        Self::new(Matrix3::identity(), Matrix3::identity(), t)
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn shear_scale(&self) -> &Matrix3<f64> {
        &self.shear_scale
    }

    pub fn translation(&self) -> &Point3 {
        &self.translation
    }

    /// `(R S)^-1`
    pub fn inverse_linear(&self) -> &Matrix3<f64> {
        &self.inverse
    }

    /// `(R S)^-1 (x - t)`
    #[inline]
    pub fn to_canonical(&self, x: Point3) -> Point3 {
        self.inverse * (x - self.translation)
    }

    /// `R S x' + t`
    #[inline]
    pub fn to_world(&self, x: Point3) -> Point3 {
        self.linear * x + self.translation
    }

    /// Returns `extra * self`, i.e. the same placement followed by a rotation
    /// about the world origin.
    pub fn rotated_by(&self, extra: &Matrix3<f64>) -> Result<Self, Error> {
        Self::new(extra * self.rotation, self.shear_scale, extra * self.translation)
    }

    /// Half extents of the world-space box containing the image of the
    /// canonical ball of the given radius.
    pub fn world_half_extents(&self, canonical_radius: f64) -> Point3 {
        Point3::new(
            self.linear.row(0).norm(),
            self.linear.row(1).norm(),
            self.linear.row(2).norm(),
        ) * canonical_radius
    }
}

#[derive(Serialize, Deserialize)]
struct TransformRepr {
    rotation: [[f64; 3]; 3],
    shear_scale: [[f64; 3]; 3],
    translation: [f64; 3],
}

fn rows(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    [
        [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
        [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
        [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
    ]
}

fn from_rows(r: [[f64; 3]; 3]) -> Matrix3<f64> {
    Matrix3::new(
        r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2],
    )
}

impl From<AffineTransform> for TransformRepr {
    fn from(t: AffineTransform) -> Self {
        Self {
            rotation: rows(&t.rotation),
            shear_scale: rows(&t.shear_scale),
            translation: [t.translation.x, t.translation.y, t.translation.z],
        }
    }
}

impl TryFrom<TransformRepr> for AffineTransform {
    type Error = Error;

    fn try_from(r: TransformRepr) -> Result<Self, Error> {
        AffineTransform::new(from_rows(r.rotation), from_rows(r.shear_scale), Point3::from(r.translation))
    }
}
