use nalgebra::{Complex, DMatrix};
use rand::Rng;

use super::*;
use crate::algebra::{rng_from_seed, Positivity};

fn close(a: &[Complex<f64>], b: &[Complex<f64>], tol: f64) -> bool {
    let scale = b.iter().map(|c| c.norm()).fold(1.0, f64::max);
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * scale)
}

fn binomial_coefficients(n: usize) -> Vec<Complex<f64>> {
    // Coefficients of (λ − 1)^n after the leading one.
    let mut out = Vec::with_capacity(n);
    let mut c = 1.0;
    for k in 1..=n {
        c = c * (n + 1 - k) as f64 / k as f64;
        out.push(Complex::new(if k % 2 == 1 { -c } else { c }, 0.0));
    }
    out
}

#[test]
fn norm_examples() {
    let over = AlgebraSpec::real(1);
    let spec = HiggsFamily::Sp2c.vector_spec(&over);
    let one = HiggsVector::new(HiggsFamily::Sp2c, AlgebraElement::identity(spec)).unwrap();
    assert!(norm_value(&one).unwrap().distance(&AlgebraElement::identity(spec)) < 1e-15);
    let j = HiggsVector::new(HiggsFamily::Sp2c, AlgebraElement::unit(spec, Unit::J, 1.0).unwrap()).unwrap();
    assert!(norm_value(&j).unwrap().distance(&AlgebraElement::identity(spec)) < 1e-15);

    let r2 = AlgebraSpec::real(2);
    let s = AlgebraElement::from_real_matrix(r2, &DMatrix::from_row_slice(2, 2, &[0.0, 2.0, -2.0, 0.0])).unwrap();
    let hv = HiggsVector::new(HiggsFamily::Oc, s.lift(&HiggsFamily::Oc.vector_spec(&r2)).unwrap()).unwrap();
    let value = norm_value(&hv).unwrap().restrict(&r2).unwrap();
    assert!(value.distance(&AlgebraElement::scalar(r2, 4.0)) < 1e-14);
    assert_ne!(value.positivity(&r2.sigma, 1e-12).unwrap(), Positivity::Neither);
}

#[test]
fn pattern_violations_are_rejected() {
    let spec = HiggsFamily::Sp2c.vector_spec(&AlgebraSpec::real(1));
    let k = AlgebraElement::unit(spec, Unit::K, 1.0).unwrap();
    assert_eq!(HiggsVector::new(HiggsFamily::Sp2c, k).unwrap_err().name(), "NotPattern");
    let one = AlgebraElement::identity(HiggsFamily::Oc.vector_spec(&AlgebraSpec::real(2)));
    assert_eq!(HiggsVector::new(HiggsFamily::Oc, one).unwrap_err().name(), "NotPattern");
    let wrong = AlgebraElement::identity(AlgebraSpec::real(2));
    assert_eq!(HiggsVector::new(HiggsFamily::Oc, wrong).unwrap_err().name(), "SpecMismatch");
}

#[test]
fn real_norm_values_are_non_negative() {
    let mut rng = rng_from_seed(5);
    for over in [AlgebraSpec::real(2), AlgebraSpec::complex_hermitian(2)] {
        for family in [HiggsFamily::Sp2c, HiggsFamily::Oc] {
            let spec = family.vector_spec(&over);
            let real = AlgebraSpec { tower: crate::algebra::ScalarTower { central: false, ..spec.tower }, ..spec };
            let hv = HiggsVector::sample(family, &over, &mut rng).unwrap();
            let q = hv.q.restrict(&real).unwrap().lift(&spec).unwrap();
            let value = norm_value(&HiggsVector::new(family, q).unwrap()).unwrap().restrict(&real).unwrap();
            let tau = family.hermitian_sigma(&real);
            assert_ne!(value.positivity(&tau, 1e-10).unwrap(), Positivity::Neither, "{family:?} over {over}");
        }
    }
}

#[test]
fn invariant_examples() {
    for family in [HiggsFamily::Sp2c, HiggsFamily::Oc] {
        let spec = family.vector_spec(&AlgebraSpec::real(2));
        let zero = HiggsVector::new(family, AlgebraElement::zeros(spec)).unwrap();
        assert!(invariants(&zero).unwrap().iter().all(|c| c.norm() == 0.0));
    }
    let spec = HiggsFamily::Sp2c.vector_spec(&AlgebraSpec::real(1));
    let one = HiggsVector::new(HiggsFamily::Sp2c, AlgebraElement::identity(spec)).unwrap();
    let inv = invariants(&one).unwrap();
    assert!(close(&inv, &binomial_coefficients(inv.len()), 1e-14), "{inv:?}");
}

#[test]
fn invariants_are_congruence_invariant() {
    let mut rng = rng_from_seed(11);
    for over in [AlgebraSpec::real(2), AlgebraSpec::complex_hermitian(1), AlgebraSpec::quaternion_hermitian(1)] {
        for family in [HiggsFamily::Sp2c, HiggsFamily::Oc] {
            for _ in 0..5 {
                let hv = HiggsVector::sample(family, &over, &mut rng).unwrap();
                let k = sample_compact(family, &over, &mut rng);
                let moved = hv.congruence(&k).unwrap();
                assert!(close(&invariants(&moved).unwrap(), &invariants(&hv).unwrap(), 1e-8), "{family:?} over {over}");
                let lk = k.lift(hv.q.spec()).unwrap();
                let expected = &lk * &norm_value(&hv).unwrap() * lk.inv().unwrap();
                let got = norm_value(&moved).unwrap();
                assert!(got.distance(&expected) < 1e-9 * (1.0 + expected.norm()), "{family:?} over {over}");
            }
        }
    }
}

#[test]
fn invariants_scale_homogeneously() {
    let mut rng = rng_from_seed(12);
    let over = AlgebraSpec::real(2);
    for family in [HiggsFamily::Sp2c, HiggsFamily::Oc] {
        let hv = HiggsVector::sample(family, &over, &mut rng).unwrap();
        let base = invariants(&hv).unwrap();
        for t in [2.0f64, -1.0] {
            let scaled = HiggsVector::new(family, hv.q.scale(t)).unwrap();
            let want: Vec<_> = base.iter().enumerate().map(|(d, c)| c * t.powi(2 * (d as i32 + 1))).collect();
            assert!(close(&invariants(&scaled).unwrap(), &want, 1e-10));
        }
    }
}

#[test]
fn trace_power_examples() {
    let r1 = AlgebraSpec::real(1);
    let zero = AlgebraElement::zeros(r1.with_n(2));
    assert!(trace_powers(&zero, 3).iter().all(|c| c.norm() == 0.0));
    let swap =
        AlgebraElement::from_real_matrix(r1.with_n(2), &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
    assert_eq!(trace_powers(&swap, 1)[0], Complex::new(2.0, 0.0));
    let c = AlgebraSpec::real(1).with_central();
    let e = AlgebraElement::unit(c, Unit::Central, 1.0).unwrap();
    assert_eq!(trace_powers(&e, 1)[0], Complex::new(-1.0, 0.0));
}

/// Brute-force traces of powers of a dense matrix.
fn dense_traces(m: &DMatrix<f64>) -> (f64, f64) {
    let m2 = m * m;
    (m2.trace(), (&m2 * &m2).trace())
}

#[test]
fn hkr_examples() {
    let field = hkr_sp4(0.0, 0.0);
    let t = trace_powers(&field.l, 2);
    assert_eq!((t[0].re, t[1].re), (0.0, 0.0));
    let field = hkr_sp4(0.5, 0.25);
    let t = trace_powers(&field.l, 2);
    assert!((t[0].re - 2.0).abs() < 1e-15 && (t[1].re - 2.0).abs() < 1e-15);
    let beta = DMatrix::from_row_slice(2, 2, &[0.25, 0.5, 0.5, 1.0]);
    assert_eq!(crate::algebra::linalg::real_rep(&field.beta), beta);
    let gamma = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    assert_eq!(crate::algebra::linalg::real_rep(&field.gamma), gamma);
    let (q2, q4) = hkr_recover(&hkr_sp4(0.3, -0.2).l).unwrap();
    assert!((q2 - 0.3).abs() < 1e-12 && (q4 + 0.2).abs() < 1e-12);
    assert_eq!(hkr_recover(&AlgebraElement::zeros(AlgebraSpec::real(4))).unwrap(), (0.0, 0.0));
    assert_eq!(hkr_recover(&AlgebraElement::zeros(AlgebraSpec::real(3))).unwrap_err().name(), "ShapeMismatch");
}

#[test]
fn hkr_trace_identities_hold() {
    let mut rng = rng_from_seed(13);
    for _ in 0..100 {
        let (q2, q4) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let field = hkr_sp4(q2, q4);
        let (t2, t4) = dense_traces(&crate::algebra::linalg::real_rep(&field.l));
        assert!((t2 - 4.0 * q2).abs() < 1e-10 && (t4 - 4.0 * (q2 * q2 + q4)).abs() < 1e-10);
        let t = trace_powers(&field.l, 2);
        assert!((t[0].re - t2).abs() < 1e-12 && (t[1].re - t4).abs() < 1e-12);
        let (r2, r4) = hkr_recover(&field.l).unwrap();
        assert!((r2 - q2).abs() < 1e-12 && (r4 - q4).abs() < 1e-12);
    }
}
