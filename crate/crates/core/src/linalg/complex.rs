//! Fixed-size complex matrices (2×2 single-qubit and 4×4 two-qubit operators).

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CScalar = Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix of fixed dimension `N`, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat<const N: usize>(pub [[Complex64; N]; N]);

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(entries: [[Complex64; N]; N]) -> Result<Self> {
        let m = CMat(entries);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMat(self.0.map(|r| r.map(|z| z * s)))
    }

    /// Largest entry modulus.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `‖M − M†‖∞`
    pub fn hermitian_residual(&self) -> f64 {
        (*self - self.adjoint()).norm_inf()
    }

    /// `‖M†M − I‖∞`
    pub fn unitary_residual(&self) -> f64 {
        (self.adjoint() * *self - Self::identity()).norm_inf()
    }

    /// Hermitian within `tol` relative to `max(1, ‖M‖∞)`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= tol * self.norm_inf().max(1.0)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_residual() <= tol
    }

    /// `U · M · U†`
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }
}

impl CMat2 {
    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }
}

/// Kronecker product `a ⊗ b`. The left factor indexes the high bit of the
/// composite index: `(a ⊗ b)[2i + k][2j + l] = a[i][j] · b[k][l]`.
pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    let mut out = CMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    out
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] += o.0[i][j];
            }
        }
        out
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] -= o.0[i][j];
            }
        }
        out
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                for j in 0..N {
                    out.0[i][j] += a * o.0[k][j];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_layout() {
        let x = CMat2::try_new([[ZERO, ONE], [ONE, ZERO]]).unwrap();
        let k = kron(&x, &CMat2::identity());
        // X ⊗ I maps |00> to |10>, i.e. index 0 to index 2.
        assert_eq!(k[(2, 0)], ONE);
        assert_eq!(k[(0, 2)], ONE);
        assert_eq!(k[(1, 0)], ZERO);
        assert_eq!(kron(&CMat2::identity(), &CMat2::identity()), CMat4::identity());
    }

    #[test]
    fn predicates() {
        let h = CMat2::try_new([[c(1.0, 0.0), c(0.0, -2.0)], [c(0.0, 2.0), c(-3.0, 0.0)]]).unwrap();
        assert!(h.is_hermitian(1e-12));
        assert!(!h.is_unitary(1e-12));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = CMat2::try_new([[c(s, 0.0), c(0.0, s)], [c(0.0, s), c(s, 0.0)]]).unwrap();
        assert!(u.is_unitary(1e-12));
        assert!(!u.is_hermitian(1e-12));
        assert!((u.det() - ONE).norm() < 1e-15);
        assert_eq!(h.trace(), c(-2.0, 0.0));
        assert_eq!(h.adjoint(), h);
    }

    #[test]
    fn rejects_non_finite() {
        let mut e = [[ZERO; 2]; 2];
        e[1][0] = c(0.0, f64::NAN);
        assert_eq!(CMat2::try_new(e), Err(Error::NonFinite));
    }
}
