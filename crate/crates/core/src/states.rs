//! Two-qubit states: density operators on ℂ²⊗ℂ², Bloch matrices and the
//! maps between them.
//!
//! Qubit 1 is the left tensor factor. Composite basis index is
//! `2·(qubit 1 index) + (qubit 2 index)`, so `|01⟩` is index 1 and `|10⟩`
//! is index 2.
//!
//! Positivity is not part of the [`DensityOp`] contract: any Hermitian
//! trace-one operator is accepted, and [`is_positive`] reports whether it is
//! a physical mixed state.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{act_density, haar_su2, LocalUnitaryPair};
use crate::linalg::{exact_sum, kron, CMat2, CMat4, RMat3, RVec3};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const CORRELATION_IMAG_TOL: f64 = 1e-10;
const POSITIVITY_TOL: f64 = 1e-10;

/// Default absolute tolerance for [`classify`].
pub const DEFAULT_CLASS_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Pauli matrices `σ₀ = I, σ₁ = X, σ₂ = Y, σ₃ = Z`.
#[derive(Debug, Clone, Copy)]
pub struct PauliBasis {
    pub sigma: [CMat2; 4],
}

impl PauliBasis {
    pub fn new() -> Self {
        let o = c(0.0, 0.0);
        PauliBasis {
            sigma: [
                CMat2::identity(),
                crate::linalg::CMat([[o, c(1.0, 0.0)], [c(1.0, 0.0), o]]),
                crate::linalg::CMat([[o, c(0.0, -1.0)], [c(0.0, 1.0), o]]),
                crate::linalg::CMat([[c(1.0, 0.0), o], [o, c(-1.0, 0.0)]]),
            ],
        }
    }

    /// `σᵢ ⊗ σⱼ`
    pub fn pair(&self, i: usize, j: usize) -> CMat4 {
        kron(&self.sigma[i], &self.sigma[j])
    }
}

impl Default for PauliBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// `σ · x = x₁σ₁ + x₂σ₂ + x₃σ₃`
pub fn pauli_dot(x: &RVec3) -> CMat2 {
    let p = PauliBasis::new();
    (1..4).fold(CMat2::zeros(), |acc, i| acc + p.sigma[i].scale(c(x[i - 1], 0.0)))
}

/// A Hermitian, trace-one operator on ℂ²⊗ℂ² (an element of Liouville space).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityOp {
    matrix: CMat4,
}

impl DensityOp {
    pub fn new(matrix: CMat4) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let scale = matrix.norm_inf().max(1.0);
        let residual = matrix.hermitian_residual();
        if residual > HERMITIAN_TOL * scale {
            return Err(Error::NonHermitianInput { residual });
        }
        let trace = matrix.trace();
        if (trace - c(1.0, 0.0)).norm() > TRACE_TOL * scale {
            return Err(Error::NotTraceOne { trace: trace.re });
        }
        Ok(DensityOp { matrix })
    }

    /// The maximally mixed state `I/4`.
    pub fn maximally_mixed() -> Self {
        DensityOp {
            matrix: CMat4::identity().scale(c(0.25, 0.0)),
        }
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let mut m = CMat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = psi[i] * psi[j].conj() / norm2;
            }
        }
        DensityOp::new(m)
    }

    /// Wrap an operator that is Hermitian up to rounding, symmetrizing it.
    pub(crate) fn from_hermitian_unchecked(m: CMat4) -> Self {
        DensityOp {
            matrix: (m + m.adjoint()).scale(c(0.5, 0.0)),
        }
    }

    pub fn matrix(&self) -> &CMat4 {
        &self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn spectrum(&self) -> [f64; 4] {
        let m = Matrix4::from_fn(|i, j| self.matrix.0[i][j]);
        let eig = SymmetricEigen::new(m);
        let mut ev = [0.0; 4];
        for (k, x) in eig.eigenvalues.iter().enumerate() {
            ev[k] = *x;
        }
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// The four Bell states `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻` as projectors.
pub fn bell_states() -> [DensityOp; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (z, p, m) = (c(0.0, 0.0), c(s, 0.0), c(-s, 0.0));
    [[p, z, z, p], [p, z, z, m], [z, p, p, z], [z, p, m, z]]
        .map(|psi| DensityOp::pure(psi).expect("Bell vectors are normalized"))
}

/// Product of computational basis states `|a⟩⟨a| ⊗ |b⟩⟨b|`.
pub fn basis_product(a: usize, b: usize) -> DensityOp {
    let mut psi = [c(0.0, 0.0); 4];
    psi[2 * a + b] = c(1.0, 0.0);
    DensityOp::pure(psi).expect("basis vector")
}

/// Bloch-matrix representation: `u` and `v` are the 1-point correlation
/// vectors of qubits 1 and 2, `c` the 3×3 matrix of 2-point correlations.
/// The implicit `C₀₀` entry is 1.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochMatrix {
    pub u: RVec3,
    pub v: RVec3,
    #[serde(rename = "C")]
    pub c: RMat3,
}

impl BlochMatrix {
    pub fn new(u: RVec3, v: RVec3, c: RMat3) -> Result<Self> {
        if u.is_finite() && v.is_finite() && c.is_finite() {
            Ok(BlochMatrix { u, v, c })
        } else {
            Err(Error::NonFinite)
        }
    }

    /// LMM point with the given 2-point correlation matrix.
    pub fn lmm(c: RMat3) -> Self {
        BlochMatrix {
            u: RVec3::ZERO,
            v: RVec3::ZERO,
            c,
        }
    }

    /// Symmetric point `(v, A)`: both 1-point vectors equal `v`.
    pub fn symmetric(v: RVec3, a: RMat3) -> Self {
        BlochMatrix { u: v, v, c: a }
    }

    /// Entry `B_ij` of the full 4×4 Bloch matrix, `i, j ∈ 0..4`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => 1.0,
            (i, 0) => self.u[i - 1],
            (0, j) => self.v[j - 1],
            (i, j) => self.c[(i - 1, j - 1)],
        }
    }

    pub fn class(&self, tol: f64) -> StateClass {
        let lmm = self.u.norm_inf() <= tol && self.v.norm_inf() <= tol;
        let sym = (self.u - self.v).norm_inf() <= tol && self.c.asymmetry() <= tol;
        match (lmm, sym) {
            (true, true) => StateClass::SymmetricLmm,
            (true, false) => StateClass::Lmm,
            (false, true) => StateClass::Symmetric,
            (false, false) => StateClass::General,
        }
    }

    /// Largest absolute difference between corresponding entries.
    pub fn distance(&self, other: &BlochMatrix) -> f64 {
        (self.u - other.u)
            .norm_inf()
            .max((self.v - other.v).norm_inf())
            .max((self.c - other.c).norm_inf())
    }

    pub fn norm_inf(&self) -> f64 {
        self.u.norm_inf().max(self.v.norm_inf()).max(self.c.norm_inf())
    }
}

/// Which linear subvariety of Liouville space a state lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateClass {
    General,
    Lmm,
    Symmetric,
    SymmetricLmm,
}

impl StateClass {
    pub fn is_lmm(self) -> bool {
        matches!(self, StateClass::Lmm | StateClass::SymmetricLmm)
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, StateClass::Symmetric | StateClass::SymmetricLmm)
    }
}

/// `tr(ρ · σᵢ ⊗ σⱼ)`.
pub fn correlation(rho: &DensityOp, i: usize, j: usize) -> Result<f64> {
    if i > 3 || j > 3 {
        return Err(Error::IndexOutOfRange(i, j));
    }
    let z = correlation_complex(rho, &PauliBasis::new(), i, j);
    let scale = rho.matrix.norm_inf().max(1.0);
    if z.im.abs() > CORRELATION_IMAG_TOL * scale {
        return Err(Error::NonHermitianInput { residual: z.im.abs() });
    }
    Ok(z.re)
}

fn correlation_complex(rho: &DensityOp, basis: &PauliBasis, i: usize, j: usize) -> Complex64 {
    // tr(ρ P) = Σ_ab ρ_ab P_ba over the four nonzero entries of P. Entries of
    // P are units in {±1, ±i}, so every term is exact and the sum is
    // correctly rounded.
    let p = basis.pair(i, j);
    let mut re = [0.0; 4];
    let mut im = [0.0; 4];
    let mut n = 0;
    for a in 0..4 {
        for b in 0..4 {
            if p.0[b][a] != c(0.0, 0.0) {
                let t = rho.matrix.0[a][b] * p.0[b][a];
                re[n] = t.re;
                im[n] = t.im;
                n += 1;
            }
        }
    }
    c(exact_sum(re), exact_sum(im))
}

/// Bloch matrix `B(ρ)`.
pub fn bloch_of(rho: &DensityOp) -> Result<BlochMatrix> {
    let mut b = BlochMatrix::default();
    for i in 1..4 {
        b.u[i - 1] = correlation(rho, i, 0)?;
        b.v[i - 1] = correlation(rho, 0, i)?;
        for j in 1..4 {
            b.c[(i - 1, j - 1)] = correlation(rho, i, j)?;
        }
    }
    Ok(b)
}

/// Inverse of [`bloch_of`]: `ρ = ¼ Σᵢⱼ Bᵢⱼ σᵢ⊗σⱼ`.
///
/// Each entry is a correctly rounded sum, so swap-symmetric Bloch data gives
/// a bitwise swap-symmetric operator and exactly cancelling terms vanish.
pub fn density_of(b: &BlochMatrix) -> DensityOp {
    let basis = PauliBasis::new();
    let pairs: Vec<(f64, CMat4)> = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .map(|(i, j)| (0.25 * b.entry(i, j), basis.pair(i, j)))
        .collect();
    let mut m = CMat4::zeros();
    for x in 0..4 {
        for y in 0..4 {
            let terms = pairs
                .iter()
                .map(|(w, p)| p.0[x][y] * *w)
                .filter(|t| *t != c(0.0, 0.0));
            let (re, im): (Vec<f64>, Vec<f64>) = terms.map(|t| (t.re, t.im)).unzip();
            m.0[x][y] = c(exact_sum(re), exact_sum(im));
        }
    }
    DensityOp { matrix: m }
}

/// The tensor factor removed by [`partial_trace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial trace over one qubit. Tracing out [`Subsystem::Second`] leaves
/// the reduced state of qubit 1, whose Bloch vector is `u`.
pub fn partial_trace(rho: &DensityOp, traced: Subsystem) -> CMat2 {
    let m = &rho.matrix.0;
    let mut out = CMat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out.0[i][j] = match traced {
                Subsystem::Second => m[2 * i][2 * j] + m[2 * i + 1][2 * j + 1],
                Subsystem::First => m[i][j] + m[2 + i][2 + j],
            };
        }
    }
    out
}

/// Bloch vector `(tr(ρσ₁), tr(ρσ₂), tr(ρσ₃))` of a single-qubit operator.
pub fn qubit_bloch_vector(rho: &CMat2) -> RVec3 {
    let p = PauliBasis::new();
    let mut out = RVec3::ZERO;
    for k in 1..4 {
        out[k - 1] = (*rho * p.sigma[k]).trace().re;
    }
    out
}

/// The swap operator `τ|ab⟩ = |ba⟩`.
pub fn swap_operator() -> CMat4 {
    let mut t = CMat4::zeros();
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        t.0[i][j] = c(1.0, 0.0);
    }
    t
}

/// Whether `τρτ = ρ` within `tol`.
pub fn is_swap_symmetric(rho: &DensityOp, tol: f64) -> bool {
    let t = swap_operator();
    (t * rho.matrix * t - rho.matrix).norm_inf() <= tol
}

/// Classify by the linear constraints on the Bloch matrix.
pub fn classify(rho: &DensityOp, tol: f64) -> StateClass {
    let basis = PauliBasis::new();
    let mut b = BlochMatrix::default();
    for i in 1..4 {
        b.u[i - 1] = correlation_complex(rho, &basis, i, 0).re;
        b.v[i - 1] = correlation_complex(rho, &basis, 0, i).re;
        for j in 1..4 {
            b.c[(i - 1, j - 1)] = correlation_complex(rho, &basis, i, j).re;
        }
    }
    b.class(tol)
}

/// Whether every eigenvalue is at least `-1e-10`.
pub fn is_positive(rho: &DensityOp) -> bool {
    rho.spectrum()[0] >= -POSITIVITY_TOL
}

/// Seeded random state of the given class. See [`random_state_with`].
pub fn random_state(class: StateClass, seed: u64, positivity: bool) -> DensityOp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_with(class, positivity, &mut rng)
}

/// Random state of the given class drawn from a caller-owned generator.
///
/// With `positivity`, the state is a normalized Ginibre product `GG†/tr(GG†)`
/// pushed onto the class by positivity-preserving maps: averaging with the
/// swap for symmetric classes; a Pauli twirl followed by a Haar-random local
/// unitary `(U₁, U₂)` (or `(U, U)`) for LMM classes. Without `positivity`,
/// Bloch coordinates are uniform in `[-1, 1]` subject to the class's linear
/// constraints, so LMM and symmetric constraints hold exactly.
pub fn random_state_with<R: Rng + ?Sized>(class: StateClass, positivity: bool, rng: &mut R) -> DensityOp {
    if positivity {
        random_positive(class, rng)
    } else {
        density_of(&random_bloch(class, rng))
    }
}

/// Uniform Bloch coordinates respecting the class constraints.
pub fn random_bloch<R: Rng + ?Sized>(class: StateClass, rng: &mut R) -> BlochMatrix {
    let mut uniform = || rng.gen_range(-1.0..=1.0);
    let mut vec3 = || RVec3([uniform(), uniform(), uniform()]);
    match class {
        StateClass::General => {
            let u = vec3();
            let v = vec3();
            let c = RMat3([vec3().0, vec3().0, vec3().0]);
            BlochMatrix { u, v, c }
        }
        StateClass::Lmm => BlochMatrix::lmm(RMat3([vec3().0, vec3().0, vec3().0])),
        StateClass::Symmetric => {
            let v = vec3();
            BlochMatrix::symmetric(v, random_symmetric(rng))
        }
        StateClass::SymmetricLmm => BlochMatrix::lmm(random_symmetric(rng)),
    }
}

/// Symmetric matrix with upper-triangle entries uniform in `[-1, 1]`.
pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R) -> RMat3 {
    let mut a = RMat3::ZERO;
    for i in 0..3 {
        for j in i..3 {
            let x = rng.gen_range(-1.0..=1.0);
            a[(i, j)] = x;
            a[(j, i)] = x;
        }
    }
    a
}

fn ginibre_state<R: Rng + ?Sized>(rng: &mut R) -> DensityOp {
    let mut g = CMat4::zeros();
    for row in g.0.iter_mut() {
        for z in row.iter_mut() {
            *z = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    let m = g * g.adjoint();
    let tr = m.trace().re;
    let mut m = m.scale(c(1.0 / tr, 0.0));
    // Hermitian up to rounding; make it exact.
    for i in 0..4 {
        m.0[i][i].im = 0.0;
        for j in 0..i {
            m.0[i][j] = m.0[j][i].conj();
        }
    }
    DensityOp { matrix: m }
}

/// `¼ Σₖ (σₖ⊗σₖ) ρ (σₖ⊗σₖ)`: kills `u`, `v` and the off-diagonal part of `C`.
fn pauli_twirl(rho: &DensityOp) -> DensityOp {
    let basis = PauliBasis::new();
    let mut m = CMat4::zeros();
    for k in 0..4 {
        let p = basis.pair(k, k);
        m = m + rho.matrix.conjugate_by(&p);
    }
    DensityOp {
        matrix: m.scale(c(0.25, 0.0)),
    }
}

fn swap_average(rho: &DensityOp) -> DensityOp {
    let t = swap_operator();
    DensityOp {
        matrix: (rho.matrix + t * rho.matrix * t).scale(c(0.5, 0.0)),
    }
}

fn random_positive<R: Rng + ?Sized>(class: StateClass, rng: &mut R) -> DensityOp {
    let rho = ginibre_state(rng);
    match class {
        StateClass::General => rho,
        StateClass::Symmetric => swap_average(&rho),
        StateClass::Lmm => {
            let g = LocalUnitaryPair::new(haar_su2(rng), haar_su2(rng)).expect("Haar samples are unitary");
            act_density(&g, &pauli_twirl(&rho))
        }
        StateClass::SymmetricLmm => {
            let u = haar_su2(rng);
            let g = LocalUnitaryPair::new(u, u).expect("Haar samples are unitary");
            act_density(&g, &pauli_twirl(&rho))
        }
    }
}
