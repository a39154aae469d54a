use proptest::prelude::*;

use qubit_invariants::groups::{act_bloch, octahedral_group, RotationPair};
use qubit_invariants::invariants::{
    lmm_bounds_check, lmm_invariants, lmm_positivity_from_invariants, lmm_section_invariants, max_relative_gap,
    octahedral_invariants, octahedral_polynomials, p9_eval, sym_invariants,
};
use qubit_invariants::io::{parse_state, write_state, StateFile};
use qubit_invariants::linalg::{eig_sym3, exact_sum, signed_svd3, RMat3, RVec3};
use qubit_invariants::orbit::{decide_equiv_lmm, lmm_canonical, Verdict, Witness};
use qubit_invariants::states::{bloch_of, density_of, is_positive, BlochMatrix};

fn vec3(h: f64) -> impl Strategy<Value = RVec3> {
    prop::array::uniform3(-h..h).prop_map(RVec3)
}

fn mat3() -> impl Strategy<Value = RMat3> {
    prop::array::uniform3(prop::array::uniform3(-1.0..1.0f64)).prop_map(RMat3)
}

fn symmetric() -> impl Strategy<Value = RMat3> {
    mat3().prop_map(|m| (m + m.transpose()).scale(0.5))
}

/// Rotation from a normalized quaternion.
fn rotation() -> impl Strategy<Value = RMat3> {
    prop::array::uniform4(-1.0..1.0f64)
        .prop_filter("quaternion away from zero", |q| q.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|q| {
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            let [w, x, y, z] = q.map(|c| c / n);
            RMat3::from_rows([
                [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
                [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
                [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
            ])
        })
}

proptest! {
    #[test]
    fn lmm_invariants_are_rotation_invariant(c in mat3(), r1 in rotation(), r2 in rotation()) {
        let moved = RotationPair { r1, r2 }.act_on_correlations(&c);
        prop_assert!(max_relative_gap(&lmm_invariants(&c).as_array(), &lmm_invariants(&moved).as_array()) < 1e-12);
    }

    #[test]
    fn section_restriction_is_exact(x in vec3(10.0)) {
        let t = lmm_invariants(&RMat3::diag(x.0));
        let s = lmm_section_invariants(&x);
        prop_assert_eq!((t.t2, t.t3, t.t4), (s.s1, s.s2, s.s3));
    }

    #[test]
    fn octahedral_invariants_are_exact_on_orbits(v in vec3(5.0)) {
        let base = octahedral_invariants(&v);
        for g in octahedral_group() {
            prop_assert_eq!(octahedral_invariants(&g.apply(&v)), base.clone());
        }
    }

    #[test]
    fn octahedral_relation_holds(v in vec3(1.0)) {
        let p = octahedral_polynomials(&v);
        let lhs = p.p4 * p.p4;
        prop_assert!((lhs - p9_eval(p.p1, p.p2, p.p3)).abs() / lhs.max(1.0) < 1e-9);
    }

    #[test]
    fn sym_invariants_are_rotation_invariant(v in vec3(1.0), a in symmetric(), r in rotation()) {
        let l = eig_sym3(&a).unwrap().eigenvalues;
        prop_assume!(l[0] - l[1] > 1e-3 && l[1] - l[2] > 1e-3 && v.norm() > 1e-3);
        let s1 = sym_invariants(&v, &a).unwrap();
        let s2 = sym_invariants(&(r * v), &r.conjugate(&a)).unwrap();
        prop_assert!(max_relative_gap(&s1.as_array(), &s2.as_array()) < 1e-8);
    }

    #[test]
    fn exact_sum_ignores_order(mut xs in prop::collection::vec(-1e6..1e6f64, 0..20), seed in any::<u64>()) {
        let forward = exact_sum(xs.iter().copied());
        let n = xs.len();
        if n > 1 {
            xs.rotate_left((seed as usize) % n);
            xs.swap(0, (seed as usize / 7) % n);
        }
        prop_assert_eq!(exact_sum(xs.iter().copied()), forward);
    }

    #[test]
    fn eigendecomposition_reconstructs(a in symmetric()) {
        let e = eig_sym3(&a).unwrap();
        prop_assert!(e.rotation.is_rotation(1e-12));
        prop_assert!((e.rotation.transpose() * RMat3::diag(e.eigenvalues) * e.rotation - a).norm_inf() < 1e-12);
        prop_assert!(e.eigenvalues[0] >= e.eigenvalues[1] && e.eigenvalues[1] >= e.eigenvalues[2]);
    }

    #[test]
    fn signed_svd_is_proper(c in mat3()) {
        let s = signed_svd3(&c);
        prop_assert!(s.left.is_rotation(1e-12) && s.right.is_rotation(1e-12));
        prop_assert!((s.reconstruct() - c).norm_inf() < 1e-12);
        let d = s.diag;
        prop_assert!(d[0] >= d[1] && d[1] >= d[2].abs());
        prop_assert!(d[2] * c.det() >= 0.0);
    }

    #[test]
    fn lmm_canonical_witness_reaches_section(c in mat3()) {
        let f = lmm_canonical(&c);
        prop_assert!((f.witness.act_on_correlations(&c) - RMat3::diag(f.diag)).norm_inf() < 1e-9);
    }

    #[test]
    fn equivalent_verdicts_carry_sound_witnesses(c in mat3(), r1 in rotation(), r2 in rotation()) {
        let m = RotationPair { r1, r2 }.act_on_correlations(&c);
        let out = decide_equiv_lmm(&c, &m, 1e-8);
        if out.verdict == Verdict::Equivalent {
            let Some(Witness::Pair(w)) = out.witness else { panic!("equivalent without witness") };
            prop_assert!((w.act_on_correlations(&c) - m).norm_inf() < 1e-7);
        }
    }

    #[test]
    fn bloch_density_round_trip(u in vec3(1.0), v in vec3(1.0), c in mat3()) {
        let b = BlochMatrix::new(u, v, c).unwrap();
        prop_assert!(bloch_of(&density_of(&b)).unwrap().distance(&b) < 1e-15);
    }

    #[test]
    fn bloch_action_preserves_lmm_class(c in mat3(), r1 in rotation(), r2 in rotation()) {
        let moved = act_bloch(&RotationPair { r1, r2 }, &BlochMatrix::lmm(c));
        prop_assert!(moved.class(1e-12).is_lmm());
    }

    #[test]
    fn json_round_trip_is_exact(u in vec3(1.0), v in vec3(1.0), c in mat3()) {
        let s = StateFile::Bloch(BlochMatrix::new(u, v, c).unwrap());
        prop_assert_eq!(parse_state(&write_state(&s)).unwrap(), s);
    }

    #[test]
    fn invariant_positivity_matches_spectrum(c in mat3()) {
        let b = BlochMatrix::lmm(c);
        let t = lmm_invariants(&c);
        prop_assert_eq!(lmm_positivity_from_invariants(&t, 0.0), is_positive(&density_of(&b)));
        // The first two stated bounds are necessary for positivity.
        if is_positive(&density_of(&b)) {
            prop_assert!(t.t2 <= 3.0 + 1e-9 && t.t3 <= (1.0 - t.t2) / 2.0 + 1e-9);
        }
    }
}

#[test]
fn stated_quartic_bound_rejects_a_positive_state() {
    // ½(|00⟩⟨00| + |11⟩⟨11|) is separable, LMM and positive.
    let c = RMat3::diag([0.0, 0.0, 1.0]);
    assert!(is_positive(&density_of(&BlochMatrix::lmm(c))));
    let t = lmm_invariants(&c);
    assert!(lmm_positivity_from_invariants(&t, 0.0));
    assert!(!lmm_bounds_check(&t));
}
