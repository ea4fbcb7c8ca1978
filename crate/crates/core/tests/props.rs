//! Property tests for the algebraic invariants.

use proptest::prelude::*;
use spincover_core::bases;
use spincover_core::blades::Multivector;
use spincover_core::covering::{cached_rep, embed_21, embed_22, generic_phi, SpinElement};
use spincover_core::group::{
    givens_decompose, givens_embed, givens_log, givens_product, is_in_so_plus, GivensFactor,
    GivensKind, Signature,
};
use spincover_core::mat::{quat_exp, re_trace, theta_h, Mat, QMat};
use spincover_core::matfun::sqrt_posdef_sl2;
use spincover_core::quat::Quaternion;

fn arb_quat() -> impl Strategy<Value = Quaternion<f64>> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn arb_qmat(n: usize) -> impl Strategy<Value = QMat> {
    proptest::collection::vec(arb_quat(), n * n)
        .prop_map(move |v| Mat::from_fn(n, n, |i, j| v[i * n + j]))
}

fn arb_factor(sig: Signature) -> impl Strategy<Value = GivensFactor> {
    let planes = spincover_core::corpus::admissible_planes(sig);
    (0..planes.len(), -1.5..1.5f64).prop_map(move |(k, t)| {
        let (kind, i, j) = planes[k];
        match kind {
            GivensKind::Standard => GivensFactor::standard(i, j, t * 2.0),
            GivensKind::Hyperbolic => GivensFactor::hyperbolic(i, j, t),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_h_is_a_star_homomorphism(a in arb_qmat(2), b in arb_qmat(2)) {
        let lhs = theta_h(&a.mul(&b));
        let rhs = theta_h(&a).mul(&theta_h(&b));
        prop_assert!(lhs.max_diff(&rhs) < 1e-12 * (1.0 + lhs.max_abs()));
        prop_assert!(theta_h(&a.conj_transpose()).max_diff(&theta_h(&a).conj_transpose()) < 1e-13);
    }

    #[test]
    fn re_trace_is_cyclic(a in arb_qmat(3), b in arb_qmat(3)) {
        let lhs = re_trace(&a.mul(&b));
        let rhs = re_trace(&b.mul(&a));
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn exp_of_hermitian_is_positive_definite(a in arb_qmat(2)) {
        // hermitian part of a random quaternion matrix
        let h = a.add(&a.conj_transpose()).scale(&Quaternion::real(0.25));
        let e = quat_exp(&h);
        prop_assert!(theta_h(&e).is_posdef_hermitian(1e-9));
        // and the exponential matches the complex picture
        prop_assert!(theta_h(&e).max_diff(&theta_h(&h).expm()) < 1e-10 * (1.0 + theta_h(&e).max_abs()));
    }

    #[test]
    fn sqrt_posdef_sl2_squares_back(a in -1.2..1.2f64, b in -1.2..1.2f64, c in 0.3..1.8f64) {
        // random SPD with det 1: normalize A^T A
        let m = Mat::from_rows(vec![vec![c, a], vec![b, (1.0 + a * b).max(0.4) / c]]);
        let mut z = m.transpose().mul(&m);
        let det = z[(0,0)] * z[(1,1)] - z[(0,1)] * z[(1,0)];
        z = z.scale(&(1.0 / det.sqrt()));
        let w = sqrt_posdef_sl2(&z, 1e-7).unwrap();
        prop_assert!(w.mul(&w).max_diff(&z) < 1e-12 * (1.0 + z.max_abs()));
        prop_assert!(w.is_posdef_sym(1e-10));
    }

    #[test]
    fn blade_products_are_associative(
        ca in proptest::collection::vec(-2.0..2.0f64, 16),
        cb in proptest::collection::vec(-2.0..2.0f64, 16),
        cc in proptest::collection::vec(-2.0..2.0f64, 16),
    ) {
        let sig = Signature::new(2, 2);
        let mk = |v: &[f64]| {
            let mut m = Multivector::zero(sig);
            for (mask, val) in v.iter().enumerate() {
                *m.coeff_mut(mask as u32) = *val;
            }
            m
        };
        let (a, b, c) = (mk(&ca), mk(&cb), mk(&cc));
        let lhs = a.geometric_product(&b).unwrap().geometric_product(&c).unwrap();
        let rhs = a.geometric_product(&b.geometric_product(&c).unwrap()).unwrap();
        prop_assert!(lhs.max_diff(&rhs) < 1e-10 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn reversion_is_an_anti_automorphism(
        ca in proptest::collection::vec(-2.0..2.0f64, 8),
        cb in proptest::collection::vec(-2.0..2.0f64, 8),
    ) {
        let sig = Signature::new(2, 1);
        let mk = |v: &[f64]| {
            let mut m = Multivector::zero(sig);
            for (mask, val) in v.iter().enumerate() {
                *m.coeff_mut(mask as u32) = *val;
            }
            m
        };
        let (a, b) = (mk(&ca), mk(&cb));
        let ab = a.geometric_product(&b).unwrap();
        prop_assert!(ab.reversion()
            .max_diff(&b.reversion().geometric_product(&a.reversion()).unwrap()) < 1e-11);
        prop_assert!(ab.grade_involution()
            .max_diff(&a.grade_involution().geometric_product(&b.grade_involution()).unwrap()) < 1e-11);
        prop_assert!(ab.clifford_conjugate()
            .max_diff(&b.clifford_conjugate().geometric_product(&a.clifford_conjugate()).unwrap()) < 1e-11);
    }

    #[test]
    fn matrix_rep_respects_products(
        ca in proptest::collection::vec(-1.5..1.5f64, 8),
        cb in proptest::collection::vec(-1.5..1.5f64, 8),
    ) {
        let sig = Signature::new(2, 1);
        let rep = cached_rep(sig).unwrap();
        let mk = |v: &[f64]| {
            let mut m = Multivector::zero(sig);
            for (mask, val) in v.iter().enumerate() {
                *m.coeff_mut(mask as u32) = *val;
            }
            m
        };
        let (a, b) = (mk(&ca), mk(&cb));
        let lhs = a.geometric_product(&b).unwrap().matrix_rep(rep);
        let rhs = a.matrix_rep(rep).mul(&b.matrix_rep(rep));
        prop_assert!(lhs.max_diff(&rhs) < 1e-11 * (1.0 + lhs.max_abs()));
        prop_assert!(a.add(&b).matrix_rep(rep).max_diff(&a.matrix_rep(rep).add(&b.matrix_rep(rep))) < 1e-12);
    }

    #[test]
    fn embedded_factors_are_members(f in arb_factor(Signature::new(3, 2))) {
        let sig = Signature::new(3, 2);
        let x = givens_embed(&f, sig).unwrap();
        prop_assert!(is_in_so_plus(&x, sig, 1e-9));
    }

    #[test]
    fn factor_log_exponentiates_to_the_factor(f in arb_factor(Signature::new(2, 2))) {
        let sig = Signature::new(2, 2);
        let l = givens_log(&f, sig).unwrap();
        prop_assert!(l.expm().max_diff(&givens_embed(&f, sig).unwrap()) < 1e-10);
    }

    #[test]
    fn decompose_multiplies_back(
        fs in proptest::collection::vec(arb_factor(Signature::new(2, 2)), 1..6)
    ) {
        let sig = Signature::new(2, 2);
        let x = givens_product(&fs, sig).unwrap();
        let out = givens_decompose(&x, sig, 1e-9).unwrap();
        prop_assert!(out.len() <= sig.n() * (sig.n() - 1) / 2);
        prop_assert!(givens_product(&out, sig).unwrap().max_diff(&x) < 1e-9);
    }

    #[test]
    fn phi21_is_a_homomorphism_with_kernel_pm(
        a in -1.2..1.2f64, b in -1.2..1.2f64, c in 0.3..1.5f64,
        d in -1.2..1.2f64, e in -1.2..1.2f64, g in 0.3..1.5f64,
    ) {
        let y1 = Mat::from_rows(vec![vec![c, a], vec![b, (1.0 + a * b) / c]]);
        let y2 = Mat::from_rows(vec![vec![g, d], vec![e, (1.0 + d * e) / g]]);
        let lhs = spincover_core::covering::phi_21(&y1.mul(&y2), 1e-7).unwrap();
        let rhs = spincover_core::covering::phi_21(&y1, 1e-7).unwrap()
            .mul(&spincover_core::covering::phi_21(&y2, 1e-7).unwrap());
        prop_assert!(lhs.max_diff(&rhs) < 1e-11 * (1.0 + lhs.max_abs()));
        let neg = spincover_core::covering::phi_21(&y1.neg(), 1e-7).unwrap();
        prop_assert!(neg.max_diff(&spincover_core::covering::phi_21(&y1, 1e-7).unwrap()) < 1e-12);
    }

    #[test]
    fn phi22_matches_the_generic_oracle(
        a in -1.2..1.2f64, b in -1.2..1.2f64, c in 0.3..1.5f64,
        d in -1.2..1.2f64, e in -1.2..1.2f64, g in 0.3..1.5f64,
    ) {
        let y1 = Mat::from_rows(vec![vec![c, a], vec![b, (1.0 + a * b) / c]]);
        let y2 = Mat::from_rows(vec![vec![g, d], vec![e, (1.0 + d * e) / g]]);
        let table = spincover_core::covering::phi_22(&y1, &y2, 1e-7).unwrap();
        let rep = cached_rep(Signature::new(2, 2)).unwrap();
        let oracle = generic_phi(&rep.generators(), &embed_22(&y1, &y2).to_quat(), 1e-7).unwrap();
        prop_assert!(table.max_diff(&oracle) < 1e-12 * (1.0 + table.max_abs()));
    }

    #[test]
    fn spin_pair_maps_to_one_target(f in arb_factor(Signature::new(2, 1)), t in -1.0..1.0f64) {
        // random SL(2,R) built from a factor preimage times a shear
        let sig = Signature::new(2, 1);
        let base = spincover_core::inversion::spin_factor_preimage(&f, sig).unwrap();
        let shear = SpinElement::S21(Mat::from_rows(vec![vec![1.0, t], vec![0.0, 1.0]]));
        let y = base.mul(&shear).unwrap();
        let phi_plus = y.phi().unwrap();
        let phi_minus = y.neg().phi().unwrap();
        prop_assert!(phi_plus.max_diff(&phi_minus) < 1e-12 * (1.0 + phi_plus.max_abs()));
        prop_assert!(is_in_so_plus(&phi_plus, sig, 1e-8));
    }

    #[test]
    fn embeddings_are_multiplicative(
        a in -1.2..1.2f64, b in -1.2..1.2f64, c in 0.3..1.5f64,
        d in -1.2..1.2f64, e in -1.2..1.2f64, g in 0.3..1.5f64,
    ) {
        let y1 = Mat::from_rows(vec![vec![c, a], vec![b, (1.0 + a * b) / c]]);
        let y2 = Mat::from_rows(vec![vec![g, d], vec![e, (1.0 + d * e) / g]]);
        let lhs = embed_21(&y1.mul(&y2));
        prop_assert!(lhs.max_diff(&embed_21(&y1).mul(&embed_21(&y2))) < 1e-12 * (1.0 + lhs.max_abs()));
    }
}

#[test]
fn cataloged_bases_pass_bp_checks_in_float_too() {
    // the exact checks run in bases::; here make sure float conversion keeps
    // the structure used by the numeric oracle
    for name in ["b21", "b22", "b32", "b41", "b11_1"] {
        let b = bases::basis_by_name(name).unwrap();
        let mats = b.float_mats();
        for (i, v) in mats.iter().enumerate() {
            let want = if i < b.sig.p { 1.0 } else { -1.0 };
            let sq = v.mul(v);
            let id = QMat::identity(v.rows()).scale(&Quaternion::real(want));
            assert!(sq.max_diff(&id) < 1e-14, "{name} square {i}");
        }
    }
}

#[test]
fn matrix_rep_is_a_homomorphism_for_every_cataloged_rep() {
    // random two-term multivectors in each cataloged representation
    for (p, q) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2), (4, 1)] {
        let sig = Signature::new(p, q);
        let rep = cached_rep(sig).unwrap();
        let n = sig.n() as u32;
        let masks = [1u32, (1 << n) - 1, 0b11, 1 << (n - 1)];
        for (ka, &ma) in masks.iter().enumerate() {
            for &mb in masks.iter().skip(ka) {
                let mut a = Multivector::zero(sig);
                *a.coeff_mut(ma) = 0.7;
                *a.coeff_mut(0) = -0.2;
                let mut b = Multivector::zero(sig);
                *b.coeff_mut(mb) = -1.1;
                *b.coeff_mut(0) = 0.4;
                let lhs = a.geometric_product(&b).unwrap().matrix_rep(rep);
                let rhs = a.matrix_rep(rep).mul(&b.matrix_rep(rep));
                assert!(
                    lhs.max_diff(&rhs) < 1e-12,
                    "({p},{q}) masks {ma:b},{mb:b}: {}",
                    lhs.max_diff(&rhs)
                );
            }
        }
    }
}
