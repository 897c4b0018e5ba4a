//! Fixed-size 2×2 real linear algebra.
//!
//! Everything in this crate acts on the plane, so the matrix and vector
//! types are small `Copy` structs with hand-written arithmetic rather than
//! a general linear-algebra dependency.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Column vector in the plane (space or frequency coordinates).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector spanning the line at angle `alpha`.
    pub fn from_angle(alpha: f64) -> Self {
        Self::new(alpha.cos(), alpha.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Angle of the line `ℝ·self`, reduced to `[0, π)`.
    pub fn line_angle(self) -> f64 {
        reduce_line_angle(self.y.atan2(self.x))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self * rhs.x, self * rhs.y)
    }
}

/// Real 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);
    /// The coordinate swap `[[0,1],[1,0]]`.
    pub const SWAP: Mat2 = Mat2::new(0.0, 1.0, 1.0, 0.0);

    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub const fn diag(a: f64, b: f64) -> Self {
        Self::new(a, 0.0, 0.0, b)
    }

    /// `[[cos φ, sin φ], [−sin φ, cos φ]]`, which turns lines by `−φ`.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self::new(c, s, -s, c)
    }

    /// Upper shear `[[1, s], [0, 1]]`.
    pub const fn shear(s: f64) -> Self {
        Self::new(1.0, s, 0.0, 1.0)
    }

    /// Builds from row-major entries `[m11, m12, m21, m22]`.
    pub fn from_rows(rows: [[f64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn to_rows(self) -> [[f64; 2]; 2] {
        [[self.m11, self.m12], [self.m21, self.m22]]
    }

    pub fn entries(self) -> [f64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    pub fn det(self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(self) -> f64 {
        self.m11 + self.m22
    }

    pub fn transpose(self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    /// Frobenius norm.
    pub fn norm(self) -> f64 {
        self.entries().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.entries().iter().all(|v| v.is_finite())
    }

    /// Returns the matrix if it is finite with `|det|` bounded away from
    /// zero relative to its scale.
    pub fn checked_invertible(self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::SingularMatrix(self));
        }
        let scale = self.norm();
        let det = self.det();
        if scale == 0.0 || det.abs() <= 1e-14 * scale * scale {
            return Err(Error::SingularMatrix(self));
        }
        Ok(self)
    }

    pub fn inverse(self) -> Result<Self> {
        let m = self.checked_invertible()?;
        let d = m.det();
        Ok(Self::new(m.m22 / d, -m.m12 / d, -m.m21 / d, m.m11 / d))
    }

    /// `h^{-T}`.
    pub fn inverse_transpose(self) -> Result<Self> {
        Ok(self.inverse()?.transpose())
    }

    pub fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m11 * v.x + self.m12 * v.y,
            self.m21 * v.x + self.m22 * v.y,
        )
    }

    /// `self · m · self⁻¹`.
    pub fn conjugate(self, m: Mat2) -> Result<Mat2> {
        Ok(self * m * self.inverse()?)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(k * self.m11, k * self.m12, k * self.m21, k * self.m22)
    }

    /// Largest entrywise difference, relative to the larger operand norm.
    pub fn rel_distance(self, other: Mat2) -> f64 {
        let scale = self.norm().max(other.norm()).max(f64::MIN_POSITIVE);
        (self - other).norm() / scale
    }
}

impl Default for Mat2 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * r.m11 + self.m12 * r.m21,
            self.m11 * r.m12 + self.m12 * r.m22,
            self.m21 * r.m11 + self.m22 * r.m21,
            self.m21 * r.m12 + self.m22 * r.m22,
        )
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        self.apply(v)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 + r.m11,
            self.m12 + r.m12,
            self.m21 + r.m21,
            self.m22 + r.m22,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 - r.m11,
            self.m12 - r.m12,
            self.m21 - r.m21,
            self.m22 - r.m22,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

/// Reduces an angle to `[0, π)`, snapping values within rounding of `π`
/// back to zero.
pub fn reduce_line_angle(alpha: f64) -> f64 {
    let a = alpha.rem_euclid(PI);
    if PI - a < 4.0 * f64::EPSILON {
        0.0
    } else {
        // clears the sign of −0
        a + 0.0
    }
}

/// Distance between two lines through the origin given by their angles:
/// `min(|α−α′|, π−|α−α′|)` after reduction mod π.
pub fn line_distance(a: f64, b: f64) -> f64 {
    let d = (reduce_line_angle(a) - reduce_line_angle(b)).abs();
    d.min(PI - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_shear() {
        let h = Mat2::shear(1.0);
        let inv = h.inverse().unwrap();
        assert_eq!(inv, Mat2::shear(-1.0));
        assert_eq!(h * inv, Mat2::IDENTITY);
    }

    #[test]
    fn singular_rejected() {
        assert!(Mat2::new(1.0, 2.0, 2.0, 4.0).inverse().is_err());
        assert!(Mat2::ZERO.inverse().is_err());
        assert!(Mat2::new(f64::NAN, 0.0, 0.0, 1.0).inverse().is_err());
    }

    #[test]
    fn rotation_turns_lines_clockwise() {
        let r = Mat2::rotation(0.3);
        let v = r.apply(Vec2::from_angle(PI / 2.0));
        assert!(line_distance(v.line_angle(), PI / 2.0 - 0.3) < 1e-15);
    }

    #[test]
    fn line_metric_wraps() {
        assert!(line_distance(0.0, PI - 1e-3) - 1e-3 < 1e-15);
        assert_eq!(reduce_line_angle(PI), 0.0);
        assert_eq!(reduce_line_angle(-PI / 2.0), PI / 2.0);
    }
}
