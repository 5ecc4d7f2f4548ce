//! Fixed-size 2-vectors and 2×2 matrices.
//!
//! Everything in the model is planar, so a dedicated kernel is both smaller
//! and more predictable than a general linear-algebra crate: each product is
//! a fixed expression with a fixed evaluation order, which keeps simulation
//! traces bit-reproducible.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// A column vector with two real components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub a0: f64,
    pub a1: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { a0: 0.0, a1: 0.0 };

    pub const fn new(a0: f64, a1: f64) -> Self {
        Self { a0, a1 }
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(s * self.a0, s * self.a1)
    }

    /// Componentwise product.
    pub fn hadamard(self, other: Vec2) -> Self {
        Self::new(self.a0 * other.a0, self.a1 * other.a1)
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.a0 * other.a0 + self.a1 * other.a1
    }

    pub fn norm_inf(self) -> f64 {
        self.a0.abs().max(self.a1.abs())
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(self) -> bool {
        self.a0.is_finite() && self.a1.is_finite()
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.a0, self.a1]
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Self::new(a[0], a[1])
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.a0 + rhs.a0, self.a1 + rhs.a1)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.a0 - rhs.a0, self.a1 - rhs.a1)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.a0, -self.a1)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs.scale(self)
    }
}

/// A 2×2 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub m00: f64,
    pub m01: f64,
    pub m10: f64,
    pub m11: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Self { m00, m01, m10, m11 }
    }

    pub const fn diag(d0: f64, d1: f64) -> Self {
        Self::new(d0, 0.0, 0.0, d1)
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn to_rows(self) -> [[f64; 2]; 2] {
        [[self.m00, self.m01], [self.m10, self.m11]]
    }

    pub fn det(self) -> f64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    pub fn transpose(self) -> Self {
        Self::new(self.m00, self.m10, self.m01, self.m11)
    }

    /// Largest absolute entry.
    pub fn norm_max(self) -> f64 {
        self.m00
            .abs()
            .max(self.m01.abs())
            .max(self.m10.abs())
            .max(self.m11.abs())
    }

    pub fn is_finite(self) -> bool {
        self.m00.is_finite() && self.m01.is_finite() && self.m10.is_finite() && self.m11.is_finite()
    }

    /// Determinant magnitude below which the matrix is treated as singular.
    ///
    /// Relative to the squared entry scale so that large but well-conditioned
    /// matrices are not rejected.
    pub fn singularity_threshold(self) -> f64 {
        let s = self.norm_max().max(1.0);
        1e-12 * s * s
    }

    pub fn mul_vec(self, v: Vec2) -> Vec2 {
        mat_vec_mul(self, v)
    }

    pub fn mul_mat(self, rhs: Mat2) -> Mat2 {
        mat_mul(self, rhs)
    }

    pub fn inverse(self) -> Result<Mat2, ModelError> {
        mat_inv(self)
    }

    pub fn sub_mat(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.m00 - rhs.m00,
            self.m01 - rhs.m01,
            self.m10 - rhs.m10,
            self.m11 - rhs.m11,
        )
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        mat_vec_mul(self, rhs)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        mat_mul(self, rhs)
    }
}

pub fn mat_vec_mul(m: Mat2, v: Vec2) -> Vec2 {
    Vec2::new(m.m00 * v.a0 + m.m01 * v.a1, m.m10 * v.a0 + m.m11 * v.a1)
}

pub fn mat_mul(a: Mat2, b: Mat2) -> Mat2 {
    Mat2::new(
        a.m00 * b.m00 + a.m01 * b.m10,
        a.m00 * b.m01 + a.m01 * b.m11,
        a.m10 * b.m00 + a.m11 * b.m10,
        a.m10 * b.m01 + a.m11 * b.m11,
    )
}

/// Inverse via the adjugate. Fails when `|det|` is below
/// [`Mat2::singularity_threshold`].
pub fn mat_inv(m: Mat2) -> Result<Mat2, ModelError> {
    let det = m.det();
    let threshold = m.singularity_threshold();
    if !det.is_finite() || det.abs() <= threshold {
        return Err(ModelError::SingularMatrix { det, threshold });
    }
    let inv_det = 1.0 / det;
    Ok(Mat2::new(
        m.m11 * inv_det,
        -m.m01 * inv_det,
        -m.m10 * inv_det,
        m.m00 * inv_det,
    ))
}
