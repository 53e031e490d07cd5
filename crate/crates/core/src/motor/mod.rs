//! Translators, rotors, dilators and scaling motors built from them:
//! construction, inversion, sandwich application, sphere embedding and the
//! decomposition of a motor back into translation, rotation and scale.

mod classify;

use std::ops::Mul;

use thiserror::Error;

use crate::algebra::blade::{BLADE_COUNT, EVEN, GP_SIGN, GRADE, ODD};
use crate::algebra::{reverse_sign, Coeffs, Multivector, StackWorkspace, Support, Workspace};
use crate::geom::{Pose, Quat, Vec3};

pub use classify::{classify, GeometricObject, Kind, Params, Representation};

/// Odd-grade content a motor may carry and still count as even.
pub const EVEN_TOLERANCE: f64 = 1e-9;
/// Non-rotor content allowed in the rotor recovered by [`extract_trd`].
pub const ROTOR_RESIDUAL_TOLERANCE: f64 = 1e-4;
/// Quaternion norm deviation that triggers a renormalization warning.
pub const QUAT_NORM_WARN: f64 = 1e-6;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum MotorError {
    #[error("dilation factor must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("quaternion has zero or non-finite norm")]
    DegenerateQuaternion,
    #[error("motor is not invertible")]
    Singular,
    #[error("multivector has odd-grade content {0:e}; not a motor")]
    NotEven(f64),
    #[error("object is flat (S[e5] - S[e4] = 0); it has no center or radius")]
    FlatObject,
    #[error("imaginary sphere: radius squared {radius_squared} < 0")]
    ImaginarySphere { center: Vec3, radius_squared: f64 },
    #[error("not a scaling motor: non-rotor residual {0:e}")]
    NotScalingMotor(f64),
}

/// Even-grade versor stored as its 16 even coefficients in canonical order
/// (the scalar, the ten bivectors, then the five quadvectors).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motor(pub [f64; 16]);

impl Default for Motor {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Motor {
    pub const IDENTITY: Self = {
        let mut c = [0.0; 16];
        c[0] = 1.0;
        Self(c)
    };

    pub fn coeffs(&self) -> &[f64; 16] {
        &self.0
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut out = [0.0; BLADE_COUNT];
        self.write_coeffs(&mut out);
        Multivector(out)
    }

    pub(crate) fn write_coeffs(&self, out: &mut Coeffs) {
        out.fill(0.0);
        for (k, &i) in EVEN.iter().enumerate() {
            out[i] = self.0[k];
        }
    }

    pub(crate) fn from_even_coeffs(c: &Coeffs) -> Self {
        Self(std::array::from_fn(|k| c[EVEN[k]]))
    }

    /// Takes the even part of `x`, rejecting odd content above
    /// [`EVEN_TOLERANCE`] relative to the largest coefficient.
    pub fn from_multivector(x: &Multivector) -> Result<Self, MotorError> {
        let scale = x.max_abs().max(1.0);
        let odd = ODD.iter().fold(0.0f64, |m, &i| m.max(x[i].abs()));
        if odd > EVEN_TOLERANCE * scale {
            return Err(MotorError::NotEven(odd));
        }
        Ok(Self::from_even_coeffs(&x.0))
    }

    pub fn reverse(&self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] * reverse_sign(GRADE[EVEN[k]])))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn lerp(&self, other: &Self, alpha: f64) -> Self {
        Self(std::array::from_fn(|k| (1.0 - alpha) * self.0[k] + alpha * other.0[k]))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn inverse(&self) -> Result<Self, MotorError> {
        motor_inverse(self)
    }

    /// `M X M⁻¹`.
    pub fn apply(&self, x: &Multivector) -> Result<Multivector, MotorError> {
        sandwich(self, x)
    }

    /// Scalar part of `M M̃`; 1 for unit rigid motors.
    pub fn versor_norm_squared(&self) -> f64 {
        EVEN.iter()
            .enumerate()
            .map(|(k, &i)| self.0[k] * self.0[k] * f64::from(GP_SIGN[i][i]) * reverse_sign(GRADE[i]))
            .sum()
    }
}

impl Mul for Motor {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.to_multivector(), rhs.to_multivector());
        let mut out = [0.0; BLADE_COUNT];
        StackWorkspace.gp(&a.0, Support::Even, &b.0, Support::Even, &mut out);
        Self::from_even_coeffs(&out)
    }
}

/// `T = 1 - ½ t e∞`.
pub fn translator(t: Vec3) -> Motor {
    let mut c = [0.0; BLADE_COUNT];
    write_translator(t, &mut c);
    Motor::from_even_coeffs(&c)
}

pub(crate) fn write_translator(t: Vec3, out: &mut Coeffs) {
    // t e∞ = Σ t_i (e_i4 + e_i5); indices of e14, e15, e24, e25, e34, e35.
    out.fill(0.0);
    out[0] = 1.0;
    out[8] = -0.5 * t.x;
    out[9] = -0.5 * t.x;
    out[11] = -0.5 * t.y;
    out[12] = -0.5 * t.y;
    out[13] = -0.5 * t.z;
    out[14] = -0.5 * t.z;
}

const E12: usize = 6;
const E13: usize = 7;
const E23: usize = 10;
const E45: usize = 15;

/// Rotor `a + b e12 + c e13 + d e23` for the quaternion (w, x, y, z), using
/// a = w, b = -z, c = y, d = -x. A non-unit quaternion is normalized, with a
/// logged warning when its norm is off by more than [`QUAT_NORM_WARN`].
pub fn rotor(q: Quat) -> Result<Motor, MotorError> {
    let n = q.norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(MotorError::DegenerateQuaternion);
    }
    if (n - 1.0).abs() > QUAT_NORM_WARN {
        log::warn!("rotor: quaternion norm {n} is not 1, normalizing");
    }
    let q = q.scale(1.0 / n);
    let mut c = [0.0; BLADE_COUNT];
    c[0] = q.w;
    c[E12] = -q.z;
    c[E13] = q.y;
    c[E23] = -q.x;
    Ok(Motor::from_even_coeffs(&c))
}

/// Dilator `1 + (1-d)/(1+d) e45`, scaling about the origin by `d`.
pub fn dilator(d: f64) -> Result<Motor, MotorError> {
    if !(d.is_finite() && d > 0.0) {
        return Err(MotorError::InvalidScale(d));
    }
    let mut c = [0.0; BLADE_COUNT];
    write_dilator(d, &mut c);
    Ok(Motor::from_even_coeffs(&c))
}

pub(crate) fn write_dilator(d: f64, out: &mut Coeffs) {
    out.fill(0.0);
    out[0] = 1.0;
    out[E45] = (1.0 - d) / (1.0 + d);
}

/// `(1+d)²/4d + (d²-1)/4d e45`, the exact inverse of [`dilator`].
pub fn dilator_inverse(d: f64) -> Result<Motor, MotorError> {
    if !(d.is_finite() && d > 0.0) {
        return Err(MotorError::InvalidScale(d));
    }
    let mut c = [0.0; BLADE_COUNT];
    c[0] = (1.0 + d) * (1.0 + d) / (4.0 * d);
    c[E45] = (d * d - 1.0) / (4.0 * d);
    Ok(Motor::from_even_coeffs(&c))
}

/// The scaling motor `T R D` of a pose.
pub fn pose_motor(pose: &Pose) -> Result<Motor, MotorError> {
    Ok(translator(pose.translation) * rotor(pose.rotation)? * dilator(pose.scale)?)
}

/// Sphere with center `c` and radius `r`, normalized so S[e5] - S[e4] = 1:
/// `c + ½(|c|² - r²) e∞ + e_o`.
pub fn embed_sphere(center: Vec3, radius: f64) -> Multivector {
    let h = 0.5 * (center.norm_squared() - radius * radius);
    Multivector::vector([center.x, center.y, center.z, h - 0.5, h + 0.5])
}

pub fn embed_point(p: Vec3) -> Multivector {
    embed_sphere(p, 0.0)
}

/// Dual plane `n + δ e∞`, the plane n·x = δ.
pub fn embed_plane(normal: Vec3, offset: f64) -> Multivector {
    Multivector::vector([normal.x, normal.y, normal.z, offset, offset])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    pub center: Vec3,
    pub radius: f64,
}

/// Relative tolerance below which S[e5] - S[e4] counts as zero.
const FLAT_TOLERANCE: f64 = 1e-12;
/// Tolerance on the radius squared, scaled by max(1, |center|²).
const RADIUS_SQ_TOLERANCE: f64 = 1e-9;

fn sphere_from_vector(v: [f64; 5]) -> Result<Sphere, MotorError> {
    let w = v[4] - v[3];
    let scale = v.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if !(w.abs() > FLAT_TOLERANCE * scale) {
        return Err(MotorError::FlatObject);
    }
    let center = Vec3::new(v[0] / w, v[1] / w, v[2] / w);
    let c2 = center.norm_squared();
    let r2 = c2 - (v[3] + v[4]) / w;
    let tol = RADIUS_SQ_TOLERANCE * c2.max(1.0);
    if r2.abs() <= tol {
        return Ok(Sphere { center, radius: 0.0 });
    }
    if r2 < 0.0 {
        return Err(MotorError::ImaginarySphere {
            center,
            radius_squared: r2,
        });
    }
    Ok(Sphere {
        center,
        radius: r2.sqrt(),
    })
}

/// Center and radius of the grade-1 part of a (dual) sphere or point.
///
/// The sphere is first normalized by S[e5] - S[e4]; then the center is
/// (S[e1], S[e2], S[e3]) and radius² = |center|² - (S[e4] + S[e5]).
pub fn extract_sphere(s: &Multivector) -> Result<Sphere, MotorError> {
    sphere_from_vector(s.vector_part())
}

/// Euclidean location of a (possibly unnormalized) embedded point.
pub fn point_location(x: &Multivector) -> Result<Vec3, MotorError> {
    extract_sphere(x).map(|s| s.center)
}

/// Inverse of an even element through `M⁻¹ = M̃ N⁻¹` with `N = M M̃`.
///
/// For even M, N only has grades 0 and 4, and the square of a grade-4
/// element is a scalar, so `N⁻¹ = (n0 - n4) / (n0² - n4²)`.
pub(crate) fn inverse_into<W: Workspace>(
    ws: &W,
    m: &Coeffs,
    rev: &mut Coeffs,
    norm: &mut Coeffs,
    out: &mut Coeffs,
) -> Result<(), MotorError> {
    for &i in &EVEN {
        rev[i] = m[i] * reverse_sign(GRADE[i]);
    }
    ws.gp(m, Support::Even, rev, Support::Even, norm);
    let n0 = norm[0];
    let mut n4_sq = 0.0;
    for i in 26..31 {
        n4_sq += norm[i] * norm[i] * f64::from(GP_SIGN[i][i]);
    }
    let denom = n0 * n0 - n4_sq;
    let size = EVEN.iter().fold(0.0f64, |a, &i| a.max(m[i].abs()));
    if !(denom.is_finite() && denom.abs() > 1e-12 * size.powi(4)) || size == 0.0 {
        return Err(MotorError::Singular);
    }
    for i in 0..BLADE_COUNT {
        norm[i] = match GRADE[i] {
            0 => n0 / denom,
            4 => -norm[i] / denom,
            _ => 0.0,
        };
    }
    ws.gp(rev, Support::Even, norm, Support::Even, out);
    Ok(())
}

pub fn motor_inverse(m: &Motor) -> Result<Motor, MotorError> {
    let mut ws = StackWorkspace;
    let (mut rev, mut norm, mut out) = (ws.take(), ws.take(), ws.take());
    let mc = m.to_multivector();
    inverse_into(&ws, &mc.0, &mut rev, &mut norm, &mut out)?;
    Ok(Motor::from_even_coeffs(&out))
}

/// `M X M⁻¹`.
pub fn sandwich(m: &Motor, x: &Multivector) -> Result<Multivector, MotorError> {
    let inv = motor_inverse(m)?;
    let mv = m.to_multivector();
    let mut tmp = [0.0; BLADE_COUNT];
    let mut out = [0.0; BLADE_COUNT];
    StackWorkspace.gp(&mv.0, Support::Even, &x.0, Support::All, &mut tmp);
    StackWorkspace.gp(&tmp, Support::All, &inv.to_multivector().0, Support::Even, &mut out);
    Ok(Multivector(out))
}

/// `M X M̃`, equal to the sandwich up to the scalar `M M̃` for versors.
pub fn sandwich_reverse(m: &Motor, x: &Multivector) -> Multivector {
    m.to_multivector() * *x * m.reverse().to_multivector()
}

/// Splits a scaling motor `M = T R D` into translation, rotation and scale.
///
/// The unit sphere at the origin is mapped through M; its image's center
/// and radius give the translation and scale. The rotor is then
/// `T⁻¹ M D⁻¹`, renormalized to unit length before conversion to a
/// quaternion. The recovered quaternion is defined up to sign.
pub fn extract_trd(m: &Motor) -> Result<Pose, MotorError> {
    let mut c = [0.0; BLADE_COUNT];
    m.write_coeffs(&mut c);
    decompose(&mut StackWorkspace, &c, Decompose::Strict)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Decompose {
    /// Full T, R, D split with the rotor residual check.
    Strict,
    /// For blended rigid motors: the dilation is not divided out and the
    /// rotor is projected onto its rotation part without a residual check.
    /// A linear blend of two motors lies slightly off the motor manifold;
    /// that departure lives in the e∞ terms this projection drops.
    RigidProjection,
}

/// Decomposition on caller-provided buffers; all buffers are returned to
/// the workspace whether or not the decomposition succeeds.
pub(crate) fn decompose<W: Workspace>(ws: &mut W, m: &Coeffs, mode: Decompose) -> Result<Pose, MotorError> {
    let mut bufs = [ws.take(), ws.take(), ws.take(), ws.take(), ws.take()];
    let result = {
        let [a, b, c, d, e] = &mut bufs;
        decompose_inner(ws, m, mode, a, b, c, d, e)
    };
    for buf in bufs {
        ws.give(buf);
    }
    result
}

#[allow(clippy::too_many_arguments)]
fn decompose_inner<W: Workspace>(
    ws: &W,
    m: &Coeffs,
    mode: Decompose,
    inv: &mut Coeffs,
    s1: &mut Coeffs,
    s2: &mut Coeffs,
    s3: &mut Coeffs,
    s4: &mut Coeffs,
) -> Result<Pose, MotorError> {
    inverse_into(ws, m, s1, s2, inv)?;

    // Unit sphere at the origin is -e4.
    s3.fill(0.0);
    s3[4] = -1.0;
    ws.gp(m, Support::Even, s3, Support::Odd, s1);
    ws.gp(s1, Support::Odd, inv, Support::Even, s2);
    let sphere = sphere_from_vector([s2[1], s2[2], s2[3], s2[4], s2[5]])?;
    let t = sphere.center;

    // R = T⁻¹ M D⁻¹
    write_translator(-t, s3);
    ws.gp(s3, Support::Even, m, Support::Even, s1);
    let rot: &Coeffs = match mode {
        Decompose::Strict => {
            let d = sphere.radius;
            if !(d > 0.0) {
                return Err(MotorError::InvalidScale(d));
            }
            s4.fill(0.0);
            s4[0] = (1.0 + d) * (1.0 + d) / (4.0 * d);
            s4[E45] = (d * d - 1.0) / (4.0 * d);
            ws.gp(s1, Support::Even, s4, Support::Even, s2);
            &*s2
        }
        Decompose::RigidProjection => &*s1,
    };

    let (a, b, c, d) = (rot[0], rot[E12], rot[E13], rot[E23]);
    let n = (a * a + b * b + c * c + d * d).sqrt();
    if !(n.is_finite() && n > 1e-12) {
        return Err(MotorError::NotScalingMotor(f64::INFINITY));
    }
    if mode == Decompose::Strict {
        let residual = (0..BLADE_COUNT)
            .filter(|&i| i != 0 && i != E12 && i != E13 && i != E23)
            .fold(0.0f64, |r, i| r.max(rot[i].abs()))
            / n;
        if residual > ROTOR_RESIDUAL_TOLERANCE {
            return Err(MotorError::NotScalingMotor(residual));
        }
    }
    let rotation = Quat::new(a / n, -d / n, c / n, -b / n);
    let scale = match mode {
        Decompose::Strict => sphere.radius,
        Decompose::RigidProjection => 1.0,
    };
    Ok(Pose {
        translation: t,
        rotation,
        scale,
    })
}
