//! Recognizing which geometric entity a blade represents.
//!
//! Grade-1 blades are dual (inner-product null space) spheres, points and
//! planes; grade-4 blades are their direct (outer-product) forms. Grades 2
//! and 3 are read as whichever of the dual/direct forms gives a real
//! object: a 2-blade is a direct point pair or flat point, or a dual circle
//! or line; a 3-blade is a direct circle or line, or a dual point pair or
//! flat point.

use serde::{Deserialize, Serialize};

use super::{embed_plane, embed_point, sphere_from_vector, MotorError};
use crate::algebra::Multivector;
use crate::geom::Vec3;

/// Relative tolerance of every "approximately zero" test.
pub const CLASSIFY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Point,
    Sphere,
    ImaginarySphere,
    Plane,
    Line,
    Circle,
    PointPair,
    Unknown,
}

/// Render parameters for each kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Params {
    Point {
        position: Vec3,
    },
    Sphere {
        center: Vec3,
        radius: f64,
    },
    ImaginarySphere {
        center: Vec3,
        radius_squared: f64,
    },
    /// The plane `normal · x = offset`, with a unit normal.
    Plane {
        normal: Vec3,
        offset: f64,
    },
    /// `point` is the point of the line closest to the origin.
    Line {
        point: Vec3,
        direction: Vec3,
    },
    Circle {
        center: Vec3,
        radius: f64,
        normal: Vec3,
    },
    PointPair {
        a: Vec3,
        b: Vec3,
    },
    Unknown,
}

impl Params {
    pub fn kind(&self) -> Kind {
        match self {
            Params::Point { .. } => Kind::Point,
            Params::Sphere { .. } => Kind::Sphere,
            Params::ImaginarySphere { .. } => Kind::ImaginarySphere,
            Params::Plane { .. } => Kind::Plane,
            Params::Line { .. } => Kind::Line,
            Params::Circle { .. } => Kind::Circle,
            Params::PointPair { .. } => Kind::PointPair,
            Params::Unknown => Kind::Unknown,
        }
    }
}

/// Whether a blade is read through its inner- or outer-product null space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// Inner-product null space (e.g. a grade-1 sphere).
    Dual,
    /// Outer-product null space (e.g. `P1 ∧ P2 ∧ e∞`).
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricObject {
    pub raw: Multivector,
    pub kind: Kind,
    pub params: Params,
    pub representation: Representation,
    pub grade: u8,
}

impl GeometricObject {
    fn unknown(raw: Multivector, grade: u8) -> Self {
        Self {
            raw,
            kind: Kind::Unknown,
            params: Params::Unknown,
            representation: Representation::Direct,
            grade,
        }
    }

    fn new(raw: Multivector, params: Params, representation: Representation, grade: u8) -> Self {
        Self {
            raw,
            kind: params.kind(),
            params,
            representation,
            grade,
        }
    }

    /// Rebuilds the blade from the render parameters, up to a nonzero
    /// scalar. `None` for unknown objects and tangent (zero-radius) rounds
    /// of grade 2 and 3, whose direction is not kept in the parameters.
    pub fn reconstruct(&self) -> Option<Multivector> {
        let inf = Multivector::e_inf();
        let direct = match (self.params, self.grade) {
            (Params::Unknown, _) => return None,
            (Params::Point { position }, 1 | 4) => embed_point(position).dual(),
            (Params::Point { position }, 2 | 3) => embed_point(position) ^ inf,
            (Params::Point { .. }, _) => return None,
            (Params::Sphere { center, radius }, _) => sphere_vector(center, radius * radius).dual(),
            (Params::ImaginarySphere { center, radius_squared }, _) => sphere_vector(center, radius_squared).dual(),
            (Params::Plane { normal, offset }, _) => embed_plane(normal, offset).dual(),
            (Params::Line { point, direction }, _) => embed_point(point) ^ embed_point(point + direction) ^ inf,
            (Params::Circle { center, radius, normal }, _) => {
                let u = normal.any_perpendicular();
                let v = normal.normalized().cross(u);
                embed_point(center + u * radius) ^ embed_point(center + v * radius) ^ embed_point(center - u * radius)
            }
            (Params::PointPair { a, b }, _) => embed_point(a) ^ embed_point(b),
        };
        Some(match self.representation {
            Representation::Direct => direct,
            Representation::Dual => direct.dual(),
        })
    }
}

fn sphere_vector(center: Vec3, radius_squared: f64) -> Multivector {
    let h = 0.5 * (center.norm_squared() - radius_squared);
    Multivector::vector([center.x, center.y, center.z, h - 0.5, h + 0.5])
}

fn near_zero(x: &Multivector, scale: f64) -> bool {
    x.max_abs() <= CLASSIFY_TOLERANCE * scale
}

// Canonical indices used to read flats off their coefficients.
const E14: usize = 8;
const E24: usize = 11;
const E34: usize = 13;
const E45: usize = 15;
const E124: usize = 17;
const E134: usize = 19;
const E145: usize = 21;
const E234: usize = 22;
const E245: usize = 24;
const E345: usize = 25;

/// Classifies a blade of grade 1 to 4. Anything else, including mixed-grade
/// elements and non-blades, is [`Kind::Unknown`].
pub fn classify(x: &Multivector) -> GeometricObject {
    let scale = x.max_abs();
    if !(scale > 0.0) || !x.is_finite() {
        return GeometricObject::unknown(*x, 0);
    }
    let mask = x.grade_mask(CLASSIFY_TOLERANCE * scale);
    if mask.count_ones() != 1 {
        return GeometricObject::unknown(*x, 0);
    }
    let grade = mask.trailing_zeros() as u8;
    let params = match grade {
        1 => vector_params(x),
        4 => vector_params(&x.dual()),
        2 => bivector_params(x, scale),
        3 => trivector_params(x, scale),
        _ => None,
    };
    let Some((params, dual_form)) = params else {
        return GeometricObject::unknown(*x, grade);
    };
    let representation = match (grade, dual_form) {
        (1, _) => Representation::Dual,
        (4, _) => Representation::Direct,
        (_, true) => Representation::Dual,
        (_, false) => Representation::Direct,
    };
    GeometricObject::new(*x, params, representation, grade)
}

/// Sphere, point or plane from a grade-1 dual form.
fn vector_params(s: &Multivector) -> Option<(Params, bool)> {
    let v = s.vector_part();
    let scale = v.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let w = v[4] - v[3];
    if w.abs() <= CLASSIFY_TOLERANCE * scale {
        let normal = Vec3::new(v[0], v[1], v[2]);
        let n = normal.norm();
        if n <= CLASSIFY_TOLERANCE * scale {
            return None;
        }
        let offset = 0.5 * (v[3] + v[4]) / n;
        return Some((
            Params::Plane {
                normal: normal * (1.0 / n),
                offset,
            },
            true,
        ));
    }
    let normalized = v.map(|c| c / w);
    let norm_scale = normalized.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let center = Vec3::new(normalized[0], normalized[1], normalized[2]);
    let r2 = center.norm_squared() - (normalized[3] + normalized[4]);
    let params = if r2.abs() <= CLASSIFY_TOLERANCE * norm_scale {
        Params::Point { position: center }
    } else if r2 > 0.0 {
        Params::Sphere {
            center,
            radius: r2.sqrt(),
        }
    } else {
        Params::ImaginarySphere {
            center,
            radius_squared: r2,
        }
    };
    Some((params, true))
}

/// Center and squared radius of a direct round (point pair or circle):
/// center from `X e∞ X`, radius² = `X X̂ / (e∞ ⌋ X)²`.
fn direct_round(x: &Multivector) -> Option<(Vec3, f64)> {
    let inf = Multivector::e_inf();
    let c = *x * inf * *x;
    let center = match sphere_from_vector(c.vector_part()) {
        Ok(s) => s.center,
        Err(MotorError::ImaginarySphere { center, .. }) => center,
        Err(_) => return None,
    };
    let contraction = inf | *x;
    let denom = (contraction * contraction).scalar_part();
    let num = (*x * x.grade_involution()).scalar_part();
    if denom == 0.0 {
        return None;
    }
    Some((center, num / denom))
}

fn flat_point(x: &Multivector) -> Option<Params> {
    let w = -x[E45];
    if w == 0.0 {
        return None;
    }
    Some(Params::Point {
        position: Vec3::new(x[E14] / w, x[E24] / w, x[E34] / w),
    })
}

fn direct_line(x: &Multivector) -> Option<Params> {
    let u = Vec3::new(x[E145], x[E245], x[E345]);
    let u2 = u.norm_squared();
    if !(u2 > 0.0) {
        return None;
    }
    let moment = Vec3::new(x[E234], -x[E134], x[E124]);
    let point = u.cross(moment) * (1.0 / u2);
    Some(Params::Line {
        point,
        direction: u.normalized(),
    })
}

fn round_tolerance(center: Vec3) -> f64 {
    CLASSIFY_TOLERANCE * center.norm_squared().max(1.0)
}

/// Direct point pair from a 2-blade with positive radius².
fn point_pair(x: &Multivector, center: Vec3, r2: f64) -> Option<Params> {
    let Params::Line { direction, .. } = direct_line(&(*x ^ Multivector::e_inf()))? else {
        return None;
    };
    let r = r2.sqrt();
    Some(Params::PointPair {
        a: center - direction * r,
        b: center + direction * r,
    })
}

/// Direct circle from a 3-blade with positive radius².
fn circle(x: &Multivector, center: Vec3, r2: f64) -> Option<Params> {
    let carrier = (*x ^ Multivector::e_inf()).dual();
    let n = Vec3::new(carrier[1], carrier[2], carrier[3]);
    if !(n.norm() > 0.0) {
        return None;
    }
    Some(Params::Circle {
        center,
        radius: r2.sqrt(),
        normal: n.normalized(),
    })
}

fn bivector_params(x: &Multivector, scale: f64) -> Option<(Params, bool)> {
    if !near_zero(&x.outer_product(x), scale * scale) {
        return None;
    }
    let inf = Multivector::e_inf();
    if near_zero(&(*x ^ inf), scale) {
        return flat_point(x).map(|p| (p, false));
    }
    if near_zero(&(inf | *x), scale) {
        return direct_line(&x.dual()).map(|p| (p, true));
    }
    let (center, r2) = direct_round(x)?;
    let tol = round_tolerance(center);
    if r2 > tol {
        point_pair(x, center, r2).map(|p| (p, false))
    } else if r2 < -tol {
        let d = x.dual();
        let (center, r2) = direct_round(&d)?;
        circle(&d, center, r2).map(|p| (p, true))
    } else {
        Some((Params::Point { position: center }, false))
    }
}

fn trivector_params(x: &Multivector, scale: f64) -> Option<(Params, bool)> {
    let d = x.dual();
    if !near_zero(&d.outer_product(&d), scale * scale) {
        return None;
    }
    let inf = Multivector::e_inf();
    if near_zero(&(*x ^ inf), scale) {
        return direct_line(x).map(|p| (p, false));
    }
    if near_zero(&(inf | *x), scale) {
        return flat_point(&d).map(|p| (p, true));
    }
    let (center, r2) = direct_round(x)?;
    let tol = round_tolerance(center);
    if r2 > tol {
        circle(x, center, r2).map(|p| (p, false))
    } else if r2 < -tol {
        let (center, r2) = direct_round(&d)?;
        point_pair(&d, center, r2).map(|p| (p, true))
    } else {
        Some((Params::Point { position: center }, false))
    }
}
