//! Invariant polynomials and rational invariants.
//!
//! * LMM states (`u = v = 0`) under `SO(3)×SO(3)`: `t2 = tr CCᵀ`,
//!   `t3 = det C`, `t4 = tr (CCᵀ)²`, and their restrictions `s1, s2, s3` to
//!   diagonal `C`.
//! * The chiral octahedral group acting on ℝ³: `p1..p4` and the rational
//!   invariants `X = p2/p1², Y = p3/p1³, Z = p4/p1⁴`.
//! * Symmetric states `(v, A)` under the diagonal `SO(3)`: the lifted
//!   invariant `g`, `r = g²/Δ`, and the six generators
//!   `pX, pY, pZ, tr A, tr A², det A`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cubic_discriminant, discriminant3, eig_sym3, exact_sum, RMat3, RVec3};

/// Tolerance for [`lmm_bounds_check`].
pub const BOUNDS_TOL: f64 = 1e-9;
const SYMMETRY_TOL: f64 = 1e-12;

/// Genericity thresholds for the symmetric-state invariants.
///
/// `discriminant` is relative to `max(1, ‖A‖∞)⁶`, the scale of `Δ`;
/// `min_norm` is an absolute lower bound on `‖v‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Genericity {
    pub discriminant: f64,
    pub min_norm: f64,
}

impl Default for Genericity {
    fn default() -> Self {
        Genericity {
            discriminant: 1e-12,
            min_norm: 1e-12,
        }
    }
}

impl Genericity {
    fn check_spectrum(&self, a: &RMat3, disc: f64) -> Result<()> {
        let scale = a.norm_inf().max(1.0).powi(6);
        if disc > self.discriminant * scale {
            Ok(())
        } else {
            Err(Error::DegenerateSpectrum { discriminant: disc })
        }
    }
}

fn check_symmetric(a: &RMat3) -> Result<()> {
    let asymmetry = a.asymmetry();
    if asymmetry > SYMMETRY_TOL * a.norm_inf().max(1.0) {
        Err(Error::NotSymmetric { asymmetry })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// LMM states

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LmmInvariants {
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
}

impl LmmInvariants {
    pub fn as_array(&self) -> [f64; 3] {
        [self.t2, self.t3, self.t4]
    }
}

/// `(tr CCᵀ, det C, tr (CCᵀ)²)`.
///
/// On diagonal input the floating-point operations coincide with those of
/// [`lmm_section_invariants`], so the two agree bit for bit.
pub fn lmm_invariants(c: &RMat3) -> LmmInvariants {
    let t2 = c.0.iter().flatten().fold(0.0, |acc, x| acc + x * x);
    let gram = *c * c.transpose();
    let t4 = (gram * gram).trace();
    LmmInvariants { t2, t3: c.det(), t4 }
}

/// Gradients of `(t2, t3, t4)` with respect to the nine entries of `C`,
/// row-major: `2C`, `cof C`, `4 CCᵀC`.
pub fn lmm_invariants_jacobian(c: &RMat3) -> [[f64; 9]; 3] {
    let m = &c.0;
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    let quartic = *c * c.transpose() * *c;
    let mut jac = [[0.0; 9]; 3];
    for i in 0..3 {
        for j in 0..3 {
            jac[0][3 * i + j] = 2.0 * m[i][j];
            jac[1][3 * i + j] = cof(i, j);
            jac[2][3 * i + j] = 4.0 * quartic[(i, j)];
        }
    }
    jac
}

/// The bounds `0 ≤ t2 ≤ 3`, `t3 ≤ (1 − t2)/2` and
/// `0 ≤ t4 ≤ −2·t3 + (1 − t2)²/4`, each within [`BOUNDS_TOL`].
pub fn lmm_bounds_check(inv: &LmmInvariants) -> bool {
    let LmmInvariants { t2, t3, t4 } = *inv;
    let tol = BOUNDS_TOL;
    (-tol..=3.0 + tol).contains(&t2)
        && t3 <= (1.0 - t2) / 2.0 + tol
        && t4 >= -tol
        && t4 <= -2.0 * t3 + (1.0 - t2).powi(2) / 4.0 + tol
}

/// Positivity of an LMM state read off its invariants.
///
/// For `ρ = ¼(I + Σ Cᵢⱼ σᵢ⊗σⱼ)` the elementary symmetric functions of the
/// spectrum are `e2 = (3 − t2)/8`, `e3 = (1 − t2 − 2·t3)/16` and
/// `e4 = (1 − 2·t2 − 8·t3 + 2·t4 − t2²)/256`; the state is positive
/// semidefinite iff all three are nonnegative.
pub fn lmm_positivity_from_invariants(inv: &LmmInvariants, tol: f64) -> bool {
    let LmmInvariants { t2, t3, t4 } = *inv;
    3.0 - t2 >= -tol && 1.0 - t2 - 2.0 * t3 >= -tol && 1.0 - 2.0 * t2 - 8.0 * t3 + 2.0 * t4 - t2 * t2 >= -tol
}

/// Invariants of the Weyl group on the diagonal section `C = diag(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LmmSectionInvariants {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

/// `s1 = Σ xᵢ²`, `s2 = x₁x₂x₃`, `s3 = Σ xᵢ⁴`.
pub fn lmm_section_invariants(x: &RVec3) -> LmmSectionInvariants {
    let [a, b, c] = x.0;
    let sq = [a * a, b * b, c * c];
    LmmSectionInvariants {
        s1: sq[0] + sq[1] + sq[2],
        s2: a * (b * c),
        s3: sq[0] * sq[0] + sq[1] * sq[1] + sq[2] * sq[2],
    }
}

/// `det(∂sᵢ/∂xⱼ) = 8(x₁²x₃⁴ − x₁²x₂⁴ − x₂²x₃⁴ + x₁⁴x₂² + x₃²x₂⁴ − x₁⁴x₃²)`.
pub fn lmm_section_jacobian_det(x: &RVec3) -> f64 {
    let [a, b, c] = x.0.map(|t| t * t);
    8.0 * (a * c * c - a * b * b - b * c * c + a * a * b + c * b * b - a * a * c)
}

/// The matrix `∂sᵢ/∂xⱼ`.
pub fn lmm_section_jacobian(x: &RVec3) -> RMat3 {
    let [a, b, c] = x.0;
    RMat3::from_rows([
        [2.0 * a, 2.0 * b, 2.0 * c],
        [b * c, a * c, a * b],
        [4.0 * a * a * a, 4.0 * b * b * b, 4.0 * c * c * c],
    ])
}

// ---------------------------------------------------------------------------
// Octahedral invariants

/// Polynomial invariants of the chiral octahedral group on ℝ³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OctahedralPolynomials {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

/// `p1..p4` together with the rational invariants `X, Y, Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OctahedralInvariants {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Y")]
    pub y: f64,
    #[serde(rename = "Z")]
    pub z: f64,
}

/// `p1, p2, p3` are the elementary symmetric functions of the squares
/// `vᵢ²`; `p4 = v₁v₂v₃(v₁² − v₂²)(v₁² − v₃²)(v₂² − v₃²)`.
///
/// Evaluation goes through the sorted squares so that the result is bitwise
/// identical on every point of an orbit of signed permutations of
/// determinant +1.
pub fn octahedral_polynomials(v: &RVec3) -> OctahedralPolynomials {
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs()));
    let abs = order.map(|i| v[i].abs());
    let sq = abs.map(|a| a * a);

    let p1 = exact_sum(sq);
    let p2 = exact_sum([sq[0] * sq[1], sq[0] * sq[2], sq[1] * sq[2]]);
    let p3 = (sq[0] * sq[1]) * sq[2];

    // v₁v₂v₃ · Vandermonde(v₁², v₂², v₃²) = sign(v₁v₂v₃) · sign(order) ·
    // |v|-product · Vandermonde of the sorted squares.
    let sign_v: f64 = v.0.iter().map(|x| if *x < 0.0 { -1.0 } else { 1.0 }).product();
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| order[i] > order[j])
        .count();
    let sign_order = if inversions % 2 == 0 { 1.0 } else { -1.0 };
    let vandermonde = (sq[0] - sq[1]) * (sq[0] - sq[2]) * (sq[1] - sq[2]);
    let p4 = sign_v * sign_order * ((abs[0] * abs[1]) * abs[2]) * vandermonde;

    OctahedralPolynomials { p1, p2, p3, p4 }
}

/// Octahedral invariants including `X, Y, Z`; requires `v ≠ 0`.
pub fn octahedral_invariants(v: &RVec3) -> Result<OctahedralInvariants> {
    let OctahedralPolynomials { p1, p2, p3, p4 } = octahedral_polynomials(v);
    if p1 <= 0.0 {
        return Err(Error::ZeroVector);
    }
    let p1_2 = p1 * p1;
    Ok(OctahedralInvariants {
        p1,
        p2,
        p3,
        p4,
        x: p2 / p1_2,
        y: p3 / (p1_2 * p1),
        z: p4 / (p1_2 * p1_2),
    })
}

/// The relation polynomial with `p4² = P₉(p1, p2, p3)`:
/// `p3 · (p1²p2² − 4p2³ − 4p1³p3 + 18p1p2p3 − 27p3²)`, i.e. `p3` times the
/// discriminant of `x³ − p1·x² + p2·x − p3`.
pub fn p9_eval(p1: f64, p2: f64, p3: f64) -> f64 {
    p3 * cubic_discriminant(-p1, p2, -p3)
}

// ---------------------------------------------------------------------------
// Symmetric states

/// `g(v, A) = det[v | Av | A²v]`.
///
/// This is the index sum `Σ ε_ijk A_jl A_km A_mn v_i v_l v_n` exactly
/// (`(Av)_j = Σ_l A_jl v_l` and `(A²v)_k = Σ_mn A_km A_mn v_n`), so the sign
/// is `+1`. For `A = diag(λ)` it equals
/// `v₁v₂v₃(λ₂ − λ₁)(λ₃ − λ₁)(λ₃ − λ₂)`.
pub fn g_invariant(v: &RVec3, a: &RMat3) -> Result<f64> {
    check_symmetric(a)?;
    let av = *a * *v;
    let aav = *a * av;
    Ok(v.dot(&av.cross(&aav)))
}

/// `∏_{i<j} (λᵢ − λⱼ)²` from the eigenvalues of a symmetric matrix.
///
/// Same value as [`discriminant3`] but without the cancellation of the
/// coefficient formula, which loses relative accuracy like `ε/gap²`.
pub fn spectral_discriminant(a: &RMat3) -> Result<f64> {
    let l = eig_sym3(a)?.eigenvalues;
    Ok(((l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2])).powi(2))
}

/// `r = g(v, A)² / Δ(A)`, which restricts to `(v₁v₂v₃)²` on diagonal `A`.
pub fn r_invariant(v: &RVec3, a: &RMat3) -> Result<f64> {
    r_invariant_with(v, a, &Genericity::default())
}

pub fn r_invariant_with(v: &RVec3, a: &RMat3, genericity: &Genericity) -> Result<f64> {
    let g = g_invariant(v, a)?;
    let disc = spectral_discriminant(a)?;
    genericity.check_spectrum(a, disc)?;
    Ok(g * g / disc)
}

/// The six generators of the field of rational invariants of symmetric
/// states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymInvariants {
    #[serde(rename = "pX")]
    pub p_x: f64,
    #[serde(rename = "pY")]
    pub p_y: f64,
    #[serde(rename = "pZ")]
    pub p_z: f64,
    #[serde(rename = "trA")]
    pub tr_a: f64,
    #[serde(rename = "trA2")]
    pub tr_a2: f64,
    #[serde(rename = "detA")]
    pub det_a: f64,
}

impl SymInvariants {
    pub fn as_array(&self) -> [f64; 6] {
        [self.p_x, self.p_y, self.p_z, self.tr_a, self.tr_a2, self.det_a]
    }
}

/// `pX, pY, pZ, tr A, tr A², det A` for a symmetric state `(v, A)`.
///
/// `pX, pY, pZ` are evaluated by restriction to the diagonal section: with
/// `R A Rᵀ` diagonal (`R ∈ SO(3)`), they are `X, Y, Z` of `Rv`. Any other
/// diagonalizing rotation differs from `R` by an element of the octahedral
/// group, under which `X, Y, Z` are invariant.
pub fn sym_invariants(v: &RVec3, a: &RMat3) -> Result<SymInvariants> {
    sym_invariants_with(v, a, &Genericity::default())
}

pub fn sym_invariants_with(v: &RVec3, a: &RMat3, genericity: &Genericity) -> Result<SymInvariants> {
    check_symmetric(a)?;
    let eig = eig_sym3(a)?;
    let l = eig.eigenvalues;
    let disc = ((l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2])).powi(2);
    genericity.check_spectrum(a, disc)?;
    if v.norm() <= genericity.min_norm {
        return Err(Error::ZeroVector);
    }
    let w = eig.rotation * *v;
    let oct = octahedral_invariants(&w)?;
    Ok(SymInvariants {
        p_x: oct.x,
        p_y: oct.y,
        p_z: oct.z,
        tr_a: a.trace(),
        tr_a2: a.0.iter().flatten().fold(0.0, |acc, x| acc + x * x),
        det_a: a.det(),
    })
}

/// Relative difference `|a − b| / max(1, |a|, |b|)`.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Largest [`relative_gap`] between corresponding entries.
pub fn max_relative_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max(relative_gap(*x, *y)))
}

/// The coefficient-formula discriminant, re-exported for callers that want
/// the polynomial form.
pub fn discriminant(a: &RMat3) -> f64 {
    discriminant3(a)
}
