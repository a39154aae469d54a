//! Group actions on states: local unitaries `U(2)×U(2)` on density
//! operators, rotation pairs `SO(3)×SO(3)` on Bloch matrices, the covering
//! map between them, and the finite signed-permutation groups that act on
//! the diagonal sections.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, CMat, CMat2, RMat3, RVec3};
use crate::states::{BlochMatrix, DensityOp, PauliBasis};

const UNITARY_TOL: f64 = 1e-12;
const ROTATION_TOL: f64 = 1e-12;

/// A pair of single-qubit unitaries acting as `U₁ ⊗ U₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitaryPair {
    pub u1: CMat2,
    pub u2: CMat2,
}

impl LocalUnitaryPair {
    pub fn new(u1: CMat2, u2: CMat2) -> Result<Self> {
        for u in [&u1, &u2] {
            let residual = u.unitary_residual();
            if residual > UNITARY_TOL {
                return Err(Error::NotUnitary { residual });
            }
        }
        Ok(LocalUnitaryPair { u1, u2 })
    }

    /// Image under the covering map, factor by factor.
    pub fn rotations(&self) -> Result<RotationPair> {
        Ok(RotationPair {
            r1: so3_of_u2(&self.u1)?,
            r2: so3_of_u2(&self.u2)?,
        })
    }
}

/// A pair of rotations acting on Bloch matrices by
/// `u ↦ R₁u, v ↦ R₂v, C ↦ R₁ C R₂ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationPair {
    #[serde(rename = "R1")]
    pub r1: RMat3,
    #[serde(rename = "R2")]
    pub r2: RMat3,
}

impl RotationPair {
    pub const IDENTITY: RotationPair = RotationPair {
        r1: RMat3::IDENTITY,
        r2: RMat3::IDENTITY,
    };

    pub fn new(r1: RMat3, r2: RMat3) -> Result<Self> {
        for r in [&r1, &r2] {
            if !r.is_rotation(ROTATION_TOL) {
                return Err(Error::NotUnitary {
                    residual: r.orthogonality_defect().max((r.det() - 1.0).abs()),
                });
            }
        }
        Ok(RotationPair { r1, r2 })
    }

    /// Diagonal pair `(R, R)`, the action preserving symmetric states.
    pub fn diagonal(r: RMat3) -> Self {
        RotationPair { r1: r, r2: r }
    }

    /// `self ∘ other`: act by `other` first.
    pub fn compose(&self, other: &RotationPair) -> RotationPair {
        RotationPair {
            r1: self.r1 * other.r1,
            r2: self.r2 * other.r2,
        }
    }

    pub fn inverse(&self) -> RotationPair {
        RotationPair {
            r1: self.r1.transpose(),
            r2: self.r2.transpose(),
        }
    }

    /// `R₁ C R₂ᵀ`
    pub fn act_on_correlations(&self, c: &RMat3) -> RMat3 {
        self.r1 * *c * self.r2.transpose()
    }
}

/// Covering map `U(2) → SO(3)`, `r(U)ᵢⱼ = ½ tr(σᵢ U σⱼ U†)`.
pub fn so3_of_u2(u: &CMat2) -> Result<RMat3> {
    let residual = u.unitary_residual();
    if residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let p = PauliBasis::new();
    let ud = u.adjoint();
    let mut r = RMat3::ZERO;
    for j in 0..3 {
        let conj = *u * p.sigma[j + 1] * ud;
        for i in 0..3 {
            r[(i, j)] = 0.5 * (p.sigma[i + 1] * conj).trace().re;
        }
    }
    Ok(r)
}

/// `(U₁⊗U₂) ρ (U₁⊗U₂)†`
pub fn act_density(g: &LocalUnitaryPair, rho: &DensityOp) -> DensityOp {
    let u = kron(&g.u1, &g.u2);
    DensityOp::from_hermitian_unchecked(rho.matrix().conjugate_by(&u))
}

/// Rotation-pair action on a Bloch matrix.
pub fn act_bloch(g: &RotationPair, b: &BlochMatrix) -> BlochMatrix {
    BlochMatrix {
        u: g.r1 * b.u,
        v: g.r2 * b.v,
        c: g.act_on_correlations(&b.c),
    }
}

/// Haar-random element of SU(2): a uniformly random unit vector `(a, b)` in
/// ℂ², arranged as `[[a, −b̄], [b, ā]]`.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    let mut z = [0.0f64; 4];
    let mut n2 = 0.0;
    while n2 == 0.0 {
        for x in z.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        n2 = z.iter().map(|x| x * x).sum();
    }
    let n = n2.sqrt();
    let a = Complex64::new(z[0] / n, z[1] / n);
    let b = Complex64::new(z[2] / n, z[3] / n);
    CMat([[a, -b.conj()], [b, a.conj()]])
}

/// Haar-random rotation, the image of a Haar-random SU(2) element.
pub fn haar_rotation<R: Rng + ?Sized>(rng: &mut R) -> RMat3 {
    so3_of_u2(&haar_su2(rng)).expect("SU(2) sample is unitary")
}

/// A 3×3 signed permutation matrix: row `i` has the entry `signs[i]` in
/// column `perm[i]` and zeros elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPerm {
    pub perm: [usize; 3],
    pub signs: [i8; 3],
}

impl SignedPerm {
    pub const IDENTITY: SignedPerm = SignedPerm {
        perm: [0, 1, 2],
        signs: [1, 1, 1],
    };

    pub fn matrix(&self) -> [[i32; 3]; 3] {
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            m[i][self.perm[i]] = i32::from(self.signs[i]);
        }
        m
    }

    /// Inverse of [`SignedPerm::matrix`]; `None` unless the input is a
    /// signed permutation matrix.
    pub fn from_matrix(m: &[[i32; 3]; 3]) -> Option<SignedPerm> {
        let mut perm = [0; 3];
        let mut signs = [0; 3];
        let mut used = [false; 3];
        for i in 0..3 {
            let nz: Vec<usize> = (0..3).filter(|&j| m[i][j] != 0).collect();
            if nz.len() != 1 || m[i][nz[0]].abs() != 1 || used[nz[0]] {
                return None;
            }
            used[nz[0]] = true;
            perm[i] = nz[0];
            signs[i] = m[i][nz[0]] as i8;
        }
        Some(SignedPerm { perm, signs })
    }

    pub fn to_rmat3(&self) -> RMat3 {
        RMat3(self.matrix().map(|r| r.map(f64::from)))
    }

    /// Product of the three signs.
    pub fn sign_product(&self) -> i32 {
        self.signs.iter().map(|&s| i32::from(s)).product()
    }

    pub fn permutation_parity(&self) -> i32 {
        let p = self.perm;
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn det(&self) -> i32 {
        self.sign_product() * self.permutation_parity()
    }

    /// Exact integer matrix product `self · other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let (a, b) = (self.matrix(), other.matrix());
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        SignedPerm::from_matrix(&m).expect("signed permutations are closed under products")
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut perm = [0; 3];
        let mut signs = [0; 3];
        for i in 0..3 {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPerm { perm, signs }
    }

    /// `M · x`, exact in floating point (entries are only permuted and negated).
    pub fn apply(&self, x: &RVec3) -> RVec3 {
        RVec3([0, 1, 2].map(|i| f64::from(self.signs[i]) * x[self.perm[i]]))
    }

    /// Split `M = E·P` into a pair `(E₁P, E₂P) ∈ O×O` with `E₁E₂ = E`, so
    /// that `(E₁P) diag(c) (E₂P)ᵀ = diag(M c)`. Requires an even number of
    /// sign flips.
    pub fn normalizer_pair(&self) -> Option<(SignedPerm, SignedPerm)> {
        if self.sign_product() != 1 {
            return None;
        }
        let bare = SignedPerm {
            perm: self.perm,
            signs: [1, 1, 1],
        };
        if self.permutation_parity() == 1 {
            Some((*self, bare))
        } else {
            let flip = |s: [i8; 3]| s.map(|x| -x);
            Some((
                SignedPerm {
                    perm: self.perm,
                    signs: flip(self.signs),
                },
                SignedPerm {
                    perm: self.perm,
                    signs: [-1, -1, -1],
                },
            ))
        }
    }
}

/// All 48 signed 3×3 permutation matrices.
pub fn signed_permutations() -> Vec<SignedPerm> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in PERMS {
        for bits in 0..8u8 {
            let signs = [0, 1, 2].map(|k| if bits >> k & 1 == 1 { -1 } else { 1 });
            out.push(SignedPerm { perm, signs });
        }
    }
    out
}

/// The chiral octahedral group: signed permutation matrices of determinant +1.
pub fn octahedral_group() -> Vec<SignedPerm> {
    signed_permutations().into_iter().filter(|g| g.det() == 1).collect()
}

/// The effective Weyl-group action on diagonals `(c₁, c₂, c₃)` of LMM
/// correlation matrices: any permutation combined with an even number of
/// sign flips. Each element is realized by the normalizer pair
/// [`SignedPerm::normalizer_pair`].
pub fn lmm_weyl_action_group() -> Vec<SignedPerm> {
    signed_permutations()
        .into_iter()
        .filter(|g| g.sign_product() == 1)
        .collect()
}

/// The 4-element stabilizer of a diagonal matrix with distinct entries in
/// SO(3): `diag(e)` with `e ∈ {±1}³`, `e₁e₂e₃ = 1`.
pub fn even_sign_flips() -> [SignedPerm; 4] {
    [[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]].map(|signs| SignedPerm {
        perm: [0, 1, 2],
        signs,
    })
}

/// Whether `elements` contains the identity and is closed under products.
pub fn is_closed_group(elements: &[SignedPerm]) -> bool {
    let set: std::collections::HashSet<_> = elements.iter().copied().collect();
    set.contains(&SignedPerm::IDENTITY)
        && elements
            .iter()
            .all(|a| elements.iter().all(|b| set.contains(&a.compose(b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn covering_map_examples() {
        assert_eq!(so3_of_u2(&CMat2::identity()).unwrap(), RMat3::IDENTITY);
        let theta = std::f64::consts::FRAC_PI_2;
        let u = CMat([
            [Complex64::from_polar(1.0, -theta / 2.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, theta / 2.0)],
        ]);
        let r = so3_of_u2(&u).unwrap();
        let (c, s) = (theta.cos(), theta.sin());
        let want = RMat3::from_rows([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]);
        assert!((r - want).norm_inf() < 1e-15);
    }

    #[test]
    fn covering_map_ignores_phase_and_rejects_nonunitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = haar_su2(&mut rng);
        let phased = u.scale(Complex64::from_polar(1.0, 0.7));
        assert!((so3_of_u2(&u).unwrap() - so3_of_u2(&phased).unwrap()).norm_inf() < 1e-14);
        assert!(matches!(so3_of_u2(&u.scale(Complex64::new(2.0, 0.0))), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn haar_su2_is_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let u = haar_su2(&mut rng);
            assert!(u.unitary_residual() < 1e-12);
            assert!((u.det() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(signed_permutations().len(), 48);
        let o = octahedral_group();
        assert_eq!(o.len(), 24);
        assert!(is_closed_group(&o));
        let w = lmm_weyl_action_group();
        assert_eq!(w.len(), 24);
        assert!(is_closed_group(&w));
        assert!(w.contains(&SignedPerm::IDENTITY));
        let all_flip = SignedPerm {
            perm: [0, 1, 2],
            signs: [-1, -1, -1],
        };
        assert!(!w.contains(&all_flip));
        assert!(is_closed_group(&even_sign_flips()));
    }

    #[test]
    fn normalizer_pairs_realize_the_weyl_action() {
        let c = RVec3::new(0.3, -1.7, 2.9);
        for g in lmm_weyl_action_group() {
            let (a, b) = g.normalizer_pair().unwrap();
            assert_eq!(a.det(), 1);
            assert_eq!(b.det(), 1);
            let conj = a.to_rmat3() * RMat3::diag(c.0) * b.to_rmat3().transpose();
            assert_eq!(conj, RMat3::diag(g.apply(&c).0));
        }
    }

    #[test]
    fn signed_perm_algebra() {
        for g in signed_permutations() {
            assert_eq!(g.compose(&g.inverse()), SignedPerm::IDENTITY);
            assert_eq!(SignedPerm::from_matrix(&g.matrix()), Some(g));
            let x = RVec3::new(1.0, 2.0, 3.0);
            assert_eq!(g.apply(&x), g.to_rmat3() * x);
        }
        assert_eq!(SignedPerm::from_matrix(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]]), None);
    }

    #[test]
    fn bloch_action_identity_and_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = crate::states::random_bloch(crate::states::StateClass::Symmetric, &mut rng);
        assert_eq!(act_bloch(&RotationPair::IDENTITY, &b), b);
        let r = haar_rotation(&mut rng);
        let moved = act_bloch(&RotationPair::diagonal(r), &b);
        assert!(moved.c.asymmetry() < 1e-15);
        assert!((moved.u - moved.v).norm_inf() == 0.0);
    }

    #[test]
    fn density_action_fixes_identity_and_center() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = crate::states::random_state_with(crate::states::StateClass::General, true, &mut rng);
        let id = LocalUnitaryPair::new(CMat2::identity(), CMat2::identity()).unwrap();
        assert_eq!(act_density(&id, &rho), rho);
        let g = LocalUnitaryPair::new(haar_su2(&mut rng), haar_su2(&mut rng)).unwrap();
        let mm = DensityOp::maximally_mixed();
        assert!((*act_density(&g, &mm).matrix() - *mm.matrix()).norm_inf() < 1e-15);
        let before = rho.spectrum();
        let after = act_density(&g, &rho).spectrum();
        for (a, b) in before.iter().zip(after) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
