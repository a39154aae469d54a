//! Singular value decomposition of 3×3 real matrices with both factors in SO(3).
//!
//! The ordinary decomposition `C = L · Σ · Rᵀ` has `L, R ∈ O(3)` and
//! `Σ ≥ 0`. Multiplying by sign matrices `D₁, D₂` with `det Dᵢ = det` of the
//! corresponding factor gives `C = (L D₁)(D₁ Σ D₂)(R D₂)ᵀ` with proper
//! rotations on both sides; the sign lands on the smallest singular value.

use serde::Serialize;

use super::eigen::eig_sym3;
use super::real::{RMat3, RVec3};

/// `C = left · diag(diag) · rightᵀ`.
///
/// After [`signed_svd3`]: `left, right ∈ SO(3)`, `diag[0] ≥ diag[1] ≥ |diag[2]|`,
/// `diag[0], diag[1] ≥ 0` and the sign of `diag[2]` is the sign of `det C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignedSVD3 {
    pub left: RMat3,
    pub right: RMat3,
    pub diag: [f64; 3],
}

impl SignedSVD3 {
    pub fn reconstruct(&self) -> RMat3 {
        self.left * RMat3::diag(self.diag) * self.right.transpose()
    }
}

/// SVD with proper-rotation factors and signed smallest singular value.
pub fn signed_svd3(c: &RMat3) -> SignedSVD3 {
    fix_signs(orthogonal_svd3(c))
}

/// SVD with orthogonal factors (determinant ±1) and nonnegative singular
/// values sorted descending. Ties keep axis order.
pub fn orthogonal_svd3(c: &RMat3) -> SignedSVD3 {
    let gram = c.transpose() * *c;
    // The Gram matrix is symmetric by construction up to rounding in the
    // off-diagonal products; mirror the upper triangle to make it exact.
    let mut gram_sym = gram;
    for i in 0..3 {
        for j in 0..i {
            gram_sym.0[i][j] = gram_sym.0[j][i];
        }
    }
    let eig = eig_sym3(&gram_sym).expect("Gram matrix is symmetric");
    let r: [RVec3; 3] = [eig.rotation.row(0), eig.rotation.row(1), eig.rotation.row(2)];

    let mut l = [RVec3::ZERO; 3];
    let mut sigma = [0.0; 3];

    let w0 = *c * r[0];
    let n0 = w0.norm();
    if n0 > 0.0 {
        l[0] = RVec3(w0.0.map(|x| x / n0));
        sigma[0] = n0;
    } else {
        l[0] = RVec3::unit(0);
    }

    let w1 = *c * r[1];
    let w1 = w1 - l[0].scale(l[0].dot(&w1));
    let n1 = w1.norm();
    if n1 > 0.0 {
        l[1] = RVec3(w1.0.map(|x| x / n1));
        sigma[1] = n1;
    } else {
        l[1] = complete_orthonormal(&l[0]);
    }

    // The orthogonal complement of span(l0, l1) is one line; orient it along C·r2.
    l[2] = l[0].cross(&l[1]);
    let s2 = l[2].dot(&(*c * r[2]));
    if s2 < 0.0 {
        l[2] = -l[2];
        sigma[2] = -s2;
    } else {
        sigma[2] = s2;
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    SignedSVD3 {
        left: RMat3::from_cols(l[order[0]], l[order[1]], l[order[2]]),
        right: RMat3::from_cols(r[order[0]], r[order[1]], r[order[2]]),
        diag: [sigma[order[0]], sigma[order[1]], sigma[order[2]]],
    }
}

/// Move both factors into SO(3) by flipping their last columns, pushing the
/// combined sign onto `diag[2]`.
pub fn fix_signs(svd: SignedSVD3) -> SignedSVD3 {
    let mut out = svd;
    let dl = svd.left.det().signum();
    let dr = svd.right.det().signum();
    if dl < 0.0 {
        for row in out.left.0.iter_mut() {
            row[2] = -row[2];
        }
    }
    if dr < 0.0 {
        for row in out.right.0.iter_mut() {
            row[2] = -row[2];
        }
    }
    out.diag[2] *= dl * dr;
    if out.diag[2] == 0.0 {
        out.diag[2] = 0.0;
    }
    out
}

/// A unit vector orthogonal to `u`, built from the coordinate axis least
/// aligned with it.
fn complete_orthonormal(u: &RVec3) -> RVec3 {
    let axis = (0..3)
        .min_by(|&i, &j| u[i].abs().total_cmp(&u[j].abs()))
        .unwrap_or(0);
    let e = RVec3::unit(axis);
    let w = e - u.scale(u.dot(&e));
    let n = w.norm();
    RVec3(w.0.map(|x| x / n))
}
