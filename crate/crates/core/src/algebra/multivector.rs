use std::fmt;
use std::ops::{Add, AddAssign, BitOr, BitXor, Index, IndexMut, Mul, Neg, Sub};

use super::blade::{self, BLADE_COUNT, GP_INDEX, GP_SIGN, GRADE, INNER_SIGN, OUTER_SIGN};
use super::AlgebraError;

/// Raw coefficient storage of a multivector in canonical blade order.
pub type Coeffs = [f64; BLADE_COUNT];

/// `out = a * b` restricted to the listed source blades of each operand.
///
/// Blades outside `a_idx` / `b_idx` are treated as zero, which lets callers
/// multiply even-grade motors with a quarter of the work of a dense product.
#[inline]
pub fn gp_into(a: &Coeffs, a_idx: &[usize], b: &Coeffs, b_idx: &[usize], out: &mut Coeffs) {
    out.fill(0.0);
    for &i in a_idx {
        let ai = a[i];
        if ai == 0.0 {
            continue;
        }
        let signs = &GP_SIGN[i];
        let targets = &GP_INDEX[i];
        for &j in b_idx {
            out[targets[j] as usize] += f64::from(signs[j]) * ai * b[j];
        }
    }
}

/// Dense geometric product over all 32x32 blade pairs, no sparsity shortcuts.
#[inline]
pub fn gp_dense_into(a: &[f64], b: &[f64], out: &mut [f64]) {
    out[..BLADE_COUNT].fill(0.0);
    for i in 0..BLADE_COUNT {
        for j in 0..BLADE_COUNT {
            out[GP_INDEX[i][j] as usize] += f64::from(GP_SIGN[i][j]) * a[i] * b[j];
        }
    }
}

fn signed_product(a: &Coeffs, b: &Coeffs, table: &[[i8; BLADE_COUNT]; BLADE_COUNT]) -> Coeffs {
    let mut out = [0.0; BLADE_COUNT];
    for i in 0..BLADE_COUNT {
        let ai = a[i];
        if ai == 0.0 {
            continue;
        }
        for j in 0..BLADE_COUNT {
            let s = table[i][j];
            if s != 0 {
                out[GP_INDEX[i][j] as usize] += f64::from(s) * ai * b[j];
            }
        }
    }
    out
}

/// Reverse sign for a blade of the given grade: (-1)^(k(k-1)/2).
#[inline]
pub const fn reverse_sign(grade: u8) -> f64 {
    match grade % 4 {
        0 | 1 => 1.0,
        _ => -1.0,
    }
}

/// A dense element of the 3D conformal geometric algebra R(4,1).
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector(pub Coeffs);

impl Default for Multivector {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Multivector {
    pub const ZERO: Self = Self([0.0; BLADE_COUNT]);
    pub const ONE: Self = Self::scalar(1.0);

    pub const fn scalar(s: f64) -> Self {
        let mut c = [0.0; BLADE_COUNT];
        c[0] = s;
        Self(c)
    }

    pub const fn from_coeffs(coeffs: Coeffs) -> Self {
        Self(coeffs)
    }

    /// Builds a multivector from a slice, which must hold exactly 32 values.
    pub fn from_slice(coeffs: &[f64]) -> Result<Self, AlgebraError> {
        let arr: Coeffs = coeffs
            .try_into()
            .map_err(|_| AlgebraError::CoefficientCount(coeffs.len()))?;
        Ok(Self(arr))
    }

    /// The unit basis blade at a canonical index.
    pub fn basis(index: usize) -> Self {
        let mut c = [0.0; BLADE_COUNT];
        c[index] = 1.0;
        Self(c)
    }

    /// The unit basis blade with the given name, e.g. `"e23"`.
    ///
    /// Panics on an invalid name; intended for constants and tests.
    pub fn blade(name: &str) -> Self {
        Self::basis(blade::blade_index(name).unwrap_or_else(|| panic!("bad blade name {name}")))
    }

    /// Grade-1 element `x e1 + y e2 + z e3 + w e4 + v e5`.
    pub fn vector(c: [f64; 5]) -> Self {
        let mut out = [0.0; BLADE_COUNT];
        out[1..6].copy_from_slice(&c);
        Self(out)
    }

    /// Null vector at the origin, ½(e5 - e4).
    pub fn e_o() -> Self {
        Self::vector([0.0, 0.0, 0.0, -0.5, 0.5])
    }

    /// Null vector at infinity, e4 + e5.
    pub fn e_inf() -> Self {
        Self::vector([0.0, 0.0, 0.0, 1.0, 1.0])
    }

    /// Unit pseudoscalar e12345.
    pub fn pseudoscalar() -> Self {
        Self::basis(BLADE_COUNT - 1)
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.0
    }

    pub fn coeffs_mut(&mut self) -> &mut Coeffs {
        &mut self.0
    }

    pub fn scalar_part(&self) -> f64 {
        self.0[0]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn geometric_product(&self, rhs: &Self) -> Self {
        let mut out = [0.0; BLADE_COUNT];
        gp_into(&self.0, &blade::ALL, &rhs.0, &blade::ALL, &mut out);
        Self(out)
    }

    pub fn outer_product(&self, rhs: &Self) -> Self {
        Self(signed_product(&self.0, &rhs.0, &OUTER_SIGN))
    }

    /// Symmetric inner product: for blades of grades r and s, the grade
    /// |r - s| part of their geometric product.
    pub fn inner_product(&self, rhs: &Self) -> Self {
        Self(signed_product(&self.0, &rhs.0, &INNER_SIGN))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0.iter()) {
            *o += r;
        }
        Self(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn reverse(&self) -> Self {
        let mut out = self.0;
        for (i, c) in out.iter_mut().enumerate() {
            *c *= reverse_sign(GRADE[i]);
        }
        Self(out)
    }

    /// Main involution: negates the odd grades.
    pub fn grade_involution(&self) -> Self {
        let mut out = self.0;
        for (i, c) in out.iter_mut().enumerate() {
            if GRADE[i] % 2 == 1 {
                *c = -*c;
            }
        }
        Self(out)
    }

    pub fn grade_part(&self, grade: usize) -> Result<Self, AlgebraError> {
        if grade > 5 {
            return Err(AlgebraError::GradeOutOfRange(grade));
        }
        let mut out = [0.0; BLADE_COUNT];
        for (i, c) in self.0.iter().enumerate() {
            if GRADE[i] as usize == grade {
                out[i] = *c;
            }
        }
        Ok(Self(out))
    }

    /// Keeps the grades whose bit is set in `grades` (bit k = grade k).
    pub fn grades(&self, grades: u8) -> Self {
        let mut out = self.0;
        for (i, c) in out.iter_mut().enumerate() {
            if grades & (1 << GRADE[i]) == 0 {
                *c = 0.0;
            }
        }
        Self(out)
    }

    /// Bit set of grades holding a coefficient above `tol` in magnitude.
    pub fn grade_mask(&self, tol: f64) -> u8 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > tol)
            .fold(0, |m, (i, _)| m | (1 << GRADE[i]))
    }

    /// Right multiplication by the inverse pseudoscalar, `X I⁻¹`.
    ///
    /// In R(4,1) I² = -1, so I⁻¹ = -I and I is central; applying the dual
    /// twice therefore gives `-X` for every grade.
    pub fn dual(&self) -> Self {
        // X (-I): the product with e12345 maps blade mask m to !m.
        let mut out = [0.0; BLADE_COUNT];
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0.0 {
                out[GP_INDEX[i][BLADE_COUNT - 1] as usize] -= f64::from(GP_SIGN[i][BLADE_COUNT - 1]) * c;
            }
        }
        Self(out)
    }

    /// Largest coefficient difference to another multivector.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Coefficients of the grade-1 part as `[e1, e2, e3, e4, e5]`.
    pub fn vector_part(&self) -> [f64; 5] {
        [self.0[1], self.0[2], self.0[3], self.0[4], self.0[5]]
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(")?;
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if *c != 0.0 {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "{c}*{}", blade::blade_name(i))?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for Multivector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Multivector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Multivector::add(&self, &rhs)
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Self) {
        for (o, r) in self.0.iter_mut().zip(rhs.0.iter()) {
            *o += r;
        }
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Multivector::add(&self, &rhs.scale(-1.0))
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.geometric_product(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}

impl BitXor for Multivector {
    type Output = Self;
    fn bitxor(self, rhs: Self) -> Self {
        self.outer_product(&rhs)
    }
}

impl BitOr for Multivector {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        self.inner_product(&rhs)
    }
}
