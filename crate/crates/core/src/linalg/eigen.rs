//! Symmetric 3×3 eigendecomposition by cyclic Jacobi rotations.

use serde::Serialize;

use super::real::RMat3;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 40;
const OFF_DIAGONAL_THRESHOLD: f64 = 1e-14;
const SYMMETRY_TOL: f64 = 1e-12;

/// Spectral decomposition `rotation · A · rotationᵀ = diag(eigenvalues)`.
///
/// Rows of `rotation` are unit eigenvectors; eigenvalues are sorted
/// descending and `rotation` is a proper rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenSym3 {
    pub eigenvalues: [f64; 3],
    pub rotation: RMat3,
}

/// Eigendecomposition of a real symmetric 3×3 matrix.
///
/// Equal eigenvalues keep the order of the Jacobi diagonal they came from,
/// so the result is a deterministic function of the input.
pub fn eig_sym3(a: &RMat3) -> Result<EigenSym3> {
    let scale = a.norm_inf();
    let asymmetry = a.asymmetry();
    if asymmetry > SYMMETRY_TOL * scale || !a.is_finite() {
        return Err(Error::NotSymmetric { asymmetry });
    }

    // Work on the upper triangle mirrored down.
    let mut m = *a;
    for i in 0..3 {
        for j in 0..i {
            m.0[i][j] = m.0[j][i];
        }
    }
    // Columns of `v` accumulate eigenvectors: vᵀ · A · v → diagonal.
    let mut v = RMat3::IDENTITY;
    let threshold = OFF_DIAGONAL_THRESHOLD * scale;

    for _ in 0..MAX_SWEEPS {
        if m.off_diagonal_max() <= threshold {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = m.0[p][q];
            if apq == 0.0 {
                continue;
            }
            let theta = (m.0[q][q] - m.0[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            rotate(&mut m, &mut v, p, q, c, s);
        }
    }

    let d = m.diagonal();
    let mut order = [0usize, 1, 2];
    // Stable: ties keep axis order.
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]));

    let mut rotation = RMat3::from_rows([
        v.col(order[0]).0,
        v.col(order[1]).0,
        v.col(order[2]).0,
    ]);
    if rotation.det() < 0.0 {
        rotation.0[2] = rotation.0[2].map(|x| -x);
    }
    Ok(EigenSym3 {
        eigenvalues: [d[order[0]], d[order[1]], d[order[2]]],
        rotation,
    })
}

/// Apply the Jacobi rotation in the (p, q) plane: `m ← Jᵀ m J`, `v ← v J`.
fn rotate(m: &mut RMat3, v: &mut RMat3, p: usize, q: usize, c: f64, s: f64) {
    let r = 3 - p - q;
    let (app, aqq, apq) = (m.0[p][p], m.0[q][q], m.0[p][q]);
    let t = s / c;
    m.0[p][p] = app - t * apq;
    m.0[q][q] = aqq + t * apq;
    m.0[p][q] = 0.0;
    m.0[q][p] = 0.0;
    let (arp, arq) = (m.0[r][p], m.0[r][q]);
    m.0[r][p] = c * arp - s * arq;
    m.0[p][r] = m.0[r][p];
    m.0[r][q] = s * arp + c * arq;
    m.0[q][r] = m.0[r][q];
    for k in 0..3 {
        let (vkp, vkq) = (v.0[k][p], v.0[k][q]);
        v.0[k][p] = c * vkp - s * vkq;
        v.0[k][q] = s * vkp + c * vkq;
    }
}
