//! Canonical forms on the diagonal sections and local-unitary equivalence
//! decisions with explicit rotation witnesses.
//!
//! Every witness maps the *first* argument onto the second.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{even_sign_flips, RotationPair};
use crate::invariants::{
    lmm_invariants, max_relative_gap, sym_invariants_with, Genericity,
};
use crate::linalg::{eig_sym3, orthogonal_svd3, signed_svd3, RMat3, RVec3, SignedSVD3};

/// Singular values closer than this (relative to `max(1, d₁)`) are treated
/// as colliding.
pub const LMM_COLLISION_TOL: f64 = 1e-10;

/// `C` moved into the diagonal section by a pair of rotations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LmmCanonicalForm {
    /// `d₁ ≥ d₂ ≥ |d₃|`, `d₁, d₂ ≥ 0`, `sign d₃ = sign det C`.
    pub diag: [f64; 3],
    /// `witness.r1 · C · witness.r2ᵀ = diag(diag)`.
    pub witness: RotationPair,
    /// Set when two of `|dᵢ|` agree within [`LMM_COLLISION_TOL`].
    pub degenerate: bool,
}

fn lmm_canonical_from(svd: SignedSVD3) -> LmmCanonicalForm {
    let d = svd.diag;
    let tol = LMM_COLLISION_TOL * d[0].abs().max(1.0);
    let a = d.map(f64::abs);
    let degenerate = (a[0] - a[1]).abs() <= tol || (a[1] - a[2]).abs() <= tol || (a[0] - a[2]).abs() <= tol;
    LmmCanonicalForm {
        diag: d,
        witness: RotationPair {
            r1: svd.left.transpose(),
            r2: svd.right.transpose(),
        },
        degenerate,
    }
}

/// Canonical form of an LMM correlation matrix via the signed SVD.
pub fn lmm_canonical(c: &RMat3) -> LmmCanonicalForm {
    lmm_canonical_from(signed_svd3(c))
}

/// Same as [`lmm_canonical`] but without moving the SVD factors into SO(3).
/// Exists only so the verification battery can show that it notices.
pub fn lmm_canonical_unfixed(c: &RMat3) -> LmmCanonicalForm {
    lmm_canonical_from(orthogonal_svd3(c))
}

/// `(v, A)` moved into the diagonal section by one rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymCanonicalForm {
    /// Strictly descending.
    pub eigs: [f64; 3],
    /// Lexicographically greatest among its images under the even sign flips.
    pub w: RVec3,
    /// `witness · v = w` and `witness · A · witnessᵀ = diag(eigs)`.
    pub witness: RMat3,
}

/// Canonical form of a symmetric state with default genericity thresholds.
pub fn sym_canonical(v: &RVec3, a: &RMat3) -> Result<SymCanonicalForm> {
    sym_canonical_with(v, a, &Genericity::default())
}

pub fn sym_canonical_with(v: &RVec3, a: &RMat3, genericity: &Genericity) -> Result<SymCanonicalForm> {
    let eig = eig_sym3(a)?;
    let l = eig.eigenvalues;
    let disc = ((l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2])).powi(2);
    if disc <= genericity.discriminant * a.norm_inf().max(1.0).powi(6) {
        return Err(Error::DegenerateSpectrum { discriminant: disc });
    }
    let w0 = eig.rotation * *v;
    let (w, flip) = even_sign_flips()
        .into_iter()
        .map(|e| (e.apply(&w0), e))
        .max_by(|(x, _), (y, _)| lex_cmp(x, y))
        .expect("four flips");
    Ok(SymCanonicalForm {
        eigs: l,
        w,
        witness: flip.to_rmat3() * eig.rotation,
    })
}

fn lex_cmp(x: &RVec3, y: &RVec3) -> std::cmp::Ordering {
    (0..3)
        .map(|i| x[i].total_cmp(&y[i]))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Pair(RotationPair),
    Rotation {
        #[serde(rename = "R")]
        r: RMat3,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceVerdict {
    pub verdict: Verdict,
    pub invariant_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// `‖g·first − second‖∞` for the emitted witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl EquivalenceVerdict {
    fn without_witness(verdict: Verdict, invariant_distance: f64) -> Self {
        EquivalenceVerdict {
            verdict,
            invariant_distance,
            witness: None,
            residual: None,
        }
    }
}

/// Decide whether `M = R₁ C R₂ᵀ` for some rotations.
///
/// Invariants reject first; otherwise the canonical forms decide and the
/// composed witness is checked against `M` before `Equivalent` is returned.
pub fn decide_equiv_lmm(c: &RMat3, m: &RMat3, tol: f64) -> EquivalenceVerdict {
    decide_equiv_lmm_by(c, m, tol, lmm_canonical)
}

pub(crate) fn decide_equiv_lmm_by(
    c: &RMat3,
    m: &RMat3,
    tol: f64,
    canonical: impl Fn(&RMat3) -> LmmCanonicalForm,
) -> EquivalenceVerdict {
    let distance = max_relative_gap(&lmm_invariants(c).as_array(), &lmm_invariants(m).as_array());
    if !distance.is_finite() {
        return EquivalenceVerdict::without_witness(Verdict::Indeterminate, distance);
    }
    if distance > tol {
        return EquivalenceVerdict::without_witness(Verdict::NotEquivalent, distance);
    }
    let (f1, f2) = (canonical(c), canonical(m));
    if f1.degenerate || f2.degenerate {
        return EquivalenceVerdict::without_witness(Verdict::Indeterminate, distance);
    }
    if max_relative_gap(&f1.diag, &f2.diag) > tol {
        return EquivalenceVerdict::without_witness(Verdict::NotEquivalent, distance);
    }
    let witness = f2.witness.inverse().compose(&f1.witness);
    let residual = (witness.act_on_correlations(c) - *m).norm_inf();
    let scale = c.norm_inf().max(m.norm_inf()).max(1.0);
    if residual < 10.0 * tol * scale {
        EquivalenceVerdict {
            verdict: Verdict::Equivalent,
            invariant_distance: distance,
            witness: Some(Witness::Pair(witness)),
            residual: Some(residual),
        }
    } else {
        EquivalenceVerdict::without_witness(Verdict::NotEquivalent, distance)
    }
}

/// Decide whether `(v′, A′) = (Rv, RARᵀ)` for some rotation `R`.
pub fn decide_equiv_sym(first: (&RVec3, &RMat3), second: (&RVec3, &RMat3), tol: f64) -> EquivalenceVerdict {
    decide_equiv_sym_with(first, second, tol, &Genericity::default())
}

pub fn decide_equiv_sym_with(
    (v1, a1): (&RVec3, &RMat3),
    (v2, a2): (&RVec3, &RMat3),
    tol: f64,
    genericity: &Genericity,
) -> EquivalenceVerdict {
    let (i1, i2) = match (sym_invariants_with(v1, a1, genericity), sym_invariants_with(v2, a2, genericity)) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return EquivalenceVerdict::without_witness(Verdict::Indeterminate, f64::NAN),
    };
    let distance = max_relative_gap(&i1.as_array(), &i2.as_array());
    if distance > tol {
        return EquivalenceVerdict::without_witness(Verdict::NotEquivalent, distance);
    }
    let (f1, f2) = match (sym_canonical_with(v1, a1, genericity), sym_canonical_with(v2, a2, genericity)) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return EquivalenceVerdict::without_witness(Verdict::Indeterminate, distance),
    };
    if max_relative_gap(&f1.eigs, &f2.eigs) > tol {
        return EquivalenceVerdict::without_witness(Verdict::NotEquivalent, distance);
    }
    // Matching over the stabilizer instead of trusting the lexicographic
    // choice keeps near-zero components of w from flipping the decision.
    let scale = f1.w.norm_inf().max(f2.w.norm_inf()).max(1.0);
    let (gap, flip) = even_sign_flips()
        .into_iter()
        .map(|e| ((e.apply(&f1.w) - f2.w).norm_inf() / scale, e))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("four flips");
    if gap > tol {
        return EquivalenceVerdict::without_witness(Verdict::NotEquivalent, distance);
    }
    let r = f2.witness.transpose() * flip.to_rmat3() * f1.witness;
    let residual = (r * *v1 - *v2).norm_inf().max((r.conjugate(a1) - *a2).norm_inf());
    let input_scale = [v1.norm_inf(), v2.norm_inf(), a1.norm_inf(), a2.norm_inf(), 1.0]
        .into_iter()
        .fold(0.0, f64::max);
    if residual < 10.0 * tol * input_scale {
        EquivalenceVerdict {
            verdict: Verdict::Equivalent,
            invariant_distance: distance,
            witness: Some(Witness::Rotation { r }),
            residual: Some(residual),
        }
    } else {
        EquivalenceVerdict::without_witness(Verdict::NotEquivalent, distance)
    }
}
