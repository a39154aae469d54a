//! Real 3-vectors and 3×3 matrices.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RVec3(pub [f64; 3]);

/// Real 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RMat3(pub [[f64; 3]; 3]);

impl RVec3 {
    pub const ZERO: RVec3 = RVec3([0.0; 3]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        RVec3([x, y, z])
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(c: [f64; 3]) -> Result<Self> {
        if c.iter().all(|x| x.is_finite()) {
            Ok(RVec3(c))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn unit(axis: usize) -> Self {
        let mut c = [0.0; 3];
        c[axis] = 1.0;
        RVec3(c)
    }

    pub fn dot(&self, other: &RVec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &RVec3) -> RVec3 {
        let (a, b) = (&self.0, &other.0);
        RVec3([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Largest absolute component.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> RVec3 {
        RVec3(self.0.map(|x| x * s))
    }

    /// Componentwise product.
    pub fn hadamard(&self, other: &RVec3) -> RVec3 {
        RVec3([
            self.0[0] * other.0[0],
            self.0[1] * other.0[1],
            self.0[2] * other.0[2],
        ])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl RMat3 {
    pub const ZERO: RMat3 = RMat3([[0.0; 3]; 3]);
    pub const IDENTITY: RMat3 = RMat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub const fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        RMat3(rows)
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_from_rows(rows: [[f64; 3]; 3]) -> Result<Self> {
        if rows.iter().flatten().all(|x| x.is_finite()) {
            Ok(RMat3(rows))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_cols(c0: RVec3, c1: RVec3, c2: RVec3) -> Self {
        RMat3([
            [c0.0[0], c1.0[0], c2.0[0]],
            [c0.0[1], c1.0[1], c2.0[1]],
            [c0.0[2], c1.0[2], c2.0[2]],
        ])
    }

    pub fn diag(d: [f64; 3]) -> Self {
        RMat3([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn row(&self, i: usize) -> RVec3 {
        RVec3(self.0[i])
    }

    pub fn col(&self, j: usize) -> RVec3 {
        RVec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn diagonal(&self) -> [f64; 3] {
        [self.0[0][0], self.0[1][1], self.0[2][2]]
    }

    pub fn transpose(&self) -> RMat3 {
        let m = &self.0;
        RMat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn scale(&self, s: f64) -> RMat3 {
        RMat3(self.0.map(|r| r.map(|x| x * s)))
    }

    /// Largest absolute entry.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest absolute entry of `self - self^T`.
    pub fn asymmetry(&self) -> f64 {
        let m = &self.0;
        (m[0][1] - m[1][0])
            .abs()
            .max((m[0][2] - m[2][0]).abs())
            .max((m[1][2] - m[2][1]).abs())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    /// Off-diagonal magnitude, used to check that a matrix is diagonal.
    pub fn off_diagonal_max(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    m = m.max(self.0[i][j].abs());
                }
            }
        }
        m
    }

    /// `‖RᵀR − I‖∞`
    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self - RMat3::IDENTITY).norm_inf()
    }

    pub fn is_rotation(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol && (self.det() - 1.0).abs() <= tol
    }

    /// `R · A · Rᵀ`
    pub fn conjugate(&self, a: &RMat3) -> RMat3 {
        *self * *a * self.transpose()
    }
}

/// Coefficients `(c2, c1, c0)` of `det(xI − A) = x³ + c2·x² + c1·x + c0`.
pub fn charpoly3(a: &RMat3) -> (f64, f64, f64) {
    let tr = a.trace();
    let tr_sq = (*a * *a).trace();
    (-tr, 0.5 * (tr * tr - tr_sq), -a.det())
}

/// Discriminant of the characteristic polynomial of `a`.
///
/// For symmetric `a` this is `∏_{i<j} (λᵢ − λⱼ)²` and therefore nonnegative
/// up to rounding.
pub fn discriminant3(a: &RMat3) -> f64 {
    let (b, c, d) = charpoly3(a);
    cubic_discriminant(b, c, d)
}

/// Discriminant of the monic cubic `x³ + b·x² + c·x + d`.
pub fn cubic_discriminant(b: f64, c: f64, d: f64) -> f64 {
    18.0 * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * c * c * c - 27.0 * d * d
}

impl Index<usize> for RVec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for RVec3 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Index<(usize, usize)> for RMat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for RMat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Add for RVec3 {
    type Output = RVec3;
    fn add(self, o: RVec3) -> RVec3 {
        RVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for RVec3 {
    type Output = RVec3;
    fn sub(self, o: RVec3) -> RVec3 {
        RVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for RVec3 {
    type Output = RVec3;
    fn neg(self) -> RVec3 {
        RVec3(self.0.map(|x| -x))
    }
}

impl Add for RMat3 {
    type Output = RMat3;
    fn add(self, o: RMat3) -> RMat3 {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] += o.0[i][j];
            }
        }
        out
    }
}

impl Sub for RMat3 {
    type Output = RMat3;
    fn sub(self, o: RMat3) -> RMat3 {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] -= o.0[i][j];
            }
        }
        out
    }
}

impl Mul for RMat3 {
    type Output = RMat3;
    fn mul(self, o: RMat3) -> RMat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j];
            }
        }
        RMat3(out)
    }
}

impl Mul<RVec3> for RMat3 {
    type Output = RVec3;
    fn mul(self, v: RVec3) -> RVec3 {
        RVec3([self.row(0).dot(&v), self.row(1).dot(&v), self.row(2).dot(&v)])
    }
}
