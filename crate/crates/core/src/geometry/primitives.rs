use super::Point3;

/// Sphere of radius `r` centered at the origin.
#[inline]
pub fn sdf_sphere(p: Point3, r: f64) -> f64 {
    p.norm() - r
}

/// Regular octahedron with half-diagonal `s`.
///
/// The `1/sqrt(3)` factor gives unit gradient along the face normals. The
/// field is a lower bound of the true distance near vertices and edges.
#[inline]
pub fn sdf_octahedron(p: Point3, s: f64) -> f64 {
    (p.x.abs() + p.y.abs() + p.z.abs() - s) / 3f64.sqrt()
}

/// Capped cone with half-angle `theta`, apex at `(0, h, 0)` and base disk in
/// the plane `y = 0`.
///
/// The meridian point is taken relative to the apex, `w = (rho, y - h)`, so
/// that the apex sits on the zero level set.
pub fn sdf_cone(p: Point3, theta: f64, h: f64) -> f64 {
    let q1 = h * theta.tan();
    let q2 = -h;
    let w1 = (p.x * p.x + p.z * p.z).sqrt();
    let w2 = p.y - h;

    // slant edge, from the apex to the base rim
    let t = ((w1 * q1 + w2 * q2) / (q1 * q1 + q2 * q2)).clamp(0.0, 1.0);
    let a1 = w1 - q1 * t;
    let a2 = w2 - q2 * t;

    // base cap
    let b1 = w1 - (w1 / q1).clamp(0.0, 1.0) * q1;
    let b2 = w2 - q2;

    let d2 = (a1 * a1 + a2 * a2).min(b1 * b1 + b2 * b2);
    // k = sign(q2) = -1
    let s = (-(w1 * q2 - w2 * q1)).max(-(w2 - q2));
    d2.sqrt() * sign(s)
}

#[inline]
fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
