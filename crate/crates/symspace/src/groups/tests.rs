use nalgebra::DMatrix;

use super::*;
use crate::algebra::{rng_from_seed, AlgebraSpec};

fn real_matrix(n: usize, v: &[f64]) -> AlgebraElement {
    AlgebraElement::from_real_matrix(AlgebraSpec::real(n), &DMatrix::from_row_slice(n, n, v)).unwrap()
}

fn gid(family: GroupFamily, over: AlgebraSpec) -> GroupId {
    GroupId::new(family, over).unwrap()
}

#[test]
fn sp2_membership_examples() {
    let g = gid(GroupFamily::Sp2, AlgebraSpec::real(1));
    assert!(group_contains(&g, &real_matrix(2, &[1.0, 0.0, 0.0, 1.0]), 1e-12).unwrap().passed());
    assert!(group_contains(&g, &real_matrix(2, &[1.0, 1.0, 0.0, 1.0]), 1e-12).unwrap().passed());
    let report = group_contains(&g, &real_matrix(2, &[2.0, 0.0, 0.0, 1.0]), 1e-12).unwrap();
    assert!(!report.passed());
    assert_eq!(report.failures(), vec!["sigma(a)d - sigma(c)b = 1"]);
    assert!((report.max_residual() - 1.0).abs() < 1e-15);
}

#[test]
fn membership_rejects_wrong_size() {
    let g = gid(GroupFamily::Sp2, AlgebraSpec::real(2));
    assert!(matches!(group_contains(&g, &real_matrix(2, &[1.0, 0.0, 0.0, 1.0]), 1e-9), Err(Error::SpecMismatch(_))));
}

#[test]
fn lie_membership_examples() {
    let sp = gid(GroupFamily::Sp2, AlgebraSpec::real(1));
    let o = gid(GroupFamily::O11, AlgebraSpec::real(1));
    let swap = real_matrix(2, &[0.0, 1.0, 1.0, 0.0]);
    assert!(lie_contains(&sp, &swap, 1e-12).unwrap().passed());
    assert!(!lie_contains(&o, &swap, 1e-12).unwrap().passed());
    let o2 = gid(GroupFamily::O11, AlgebraSpec::real(2));
    let s = real_matrix(2, &[0.0, 1.5, -1.5, 0.0]);
    let zero = AlgebraElement::zeros(AlgebraSpec::real(2));
    let xi = AlgebraElement::from_blocks(&zero, &s, &-&s, &zero).unwrap();
    assert!(lie_contains(&o2, &xi, 1e-12).unwrap().passed());
}

#[test]
fn cartan_projection_examples() {
    let sp = gid(GroupFamily::Sp2, AlgebraSpec::real(1));
    let swap = real_matrix(2, &[0.0, 1.0, 1.0, 0.0]);
    let (k, m) = cartan_project(&sp, &swap, 1e-12).unwrap();
    assert!(k.is_zero());
    assert_eq!(m, swap);
    let rot = real_matrix(2, &[0.0, 1.0, -1.0, 0.0]);
    let (k, m) = cartan_project(&sp, &rot, 1e-12).unwrap();
    assert_eq!(k, rot);
    assert!(m.is_zero());
    assert!(matches!(
        cartan_project(&sp, &real_matrix(2, &[1.0, 0.0, 0.0, 1.0]), 1e-12),
        Err(Error::NotInLieAlgebra(_))
    ));
}

#[test]
fn cartan_projection_recomposes_for_every_kind() {
    let base = AlgebraSpec::complex_hermitian(2);
    let cases = [
        gid(GroupFamily::Sp2, base),
        gid(GroupFamily::O11, base),
        gid(GroupFamily::Sp2, base.complexify(ExtensionSigma::Linear)),
    ];
    let mut rng = rng_from_seed(5);
    for g in cases {
        let kind = CartanKind::of(&g).unwrap();
        let xi = random_lie(&g, 1.0, &mut rng).unwrap();
        assert!(lie_contains(&g, &xi, 1e-12).unwrap().passed());
        let (k, m) = cartan_project(&g, &xi, 1e-12).unwrap();
        assert!((&k + &m).distance(&xi) < 1e-14);
        assert!(k_pattern_residual(kind, &k) < 1e-14);
        assert!(m_pattern_residual(kind, &m) < 1e-14);
    }
}

#[test]
fn conjugators_match_their_formulas() {
    let c = AlgebraSpec::real(1).complexify(ExtensionSigma::Linear);
    let t = Conjugator::T.matrix(&c).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(t.entry(0, 0), &[s, 0.0]);
    assert_eq!(t.entry(0, 1), &[0.0, s]);
    assert_eq!(t.entry(1, 0), &[0.0, s]);
    assert_eq!(t.entry(1, 1), &[s, 0.0]);
    let r = Conjugator::R.matrix(&AlgebraSpec::real(1)).unwrap();
    assert_eq!(r, real_matrix(2, &[s, s, -s, s]));
    assert!((&r * &r.inv().unwrap()).distance(&AlgebraElement::identity(*r.spec())) < 1e-15);
    assert!(matches!(Conjugator::Q.matrix(&c), Err(Error::UnknownUnit(_))));
}

#[test]
fn exponential_examples() {
    let sp = gid(GroupFamily::Sp2, AlgebraSpec::real(1));
    let zero = AlgebraElement::zeros(sp.matrix_spec());
    assert_eq!(exp_lie(&sp, &zero, 1.0, 1e-12).unwrap().m, AlgebraElement::identity(sp.matrix_spec()));
    let t = 0.3_f64;
    let rot = exp_lie(&sp, &real_matrix(2, &[0.0, 1.0, -1.0, 0.0]), t, 1e-12).unwrap();
    assert!(rot.m.distance(&real_matrix(2, &[t.cos(), t.sin(), -t.sin(), t.cos()])) < 1e-14);
    let mut rng = rng_from_seed(9);
    let xi = random_lie(&gid(GroupFamily::Sp2, AlgebraSpec::quaternion_hermitian(2)), 1.0, &mut rng).unwrap();
    let id = (xi.exp() * xi.scale(-1.0).exp()).add_scalar(-1.0);
    assert!(id.norm() < 1e-9);
}

#[test]
fn transporter_examples() {
    let c = AlgebraSpec::real(1);
    let y = AlgebraElement::scalar(c, 2.0);
    let g = transporter_matrix(&AlgebraElement::zeros(c), &y, false).unwrap();
    let r = 2f64.sqrt();
    let want = AlgebraElement::from_fn(c.with_n(2), |i, j, b| match (i, j, b) {
        (0, 0, 0) => r,
        (1, 1, 0) => 1.0 / r,
        _ => 0.0,
    });
    assert!(g.distance(&want) < 1e-15);
    let x = AlgebraElement::scalar(c, 0.7);
    let g = transporter_matrix(&x, &AlgebraElement::identity(c), false).unwrap();
    let want = AlgebraElement::from_fn(c.with_n(2), |i, j, b| match (i, j, b) {
        (0, 0, 0) | (1, 1, 0) => 1.0,
        (0, 1, 0) => 0.7,
        _ => 0.0,
    });
    assert!(g.distance(&want) < 1e-15);
}

#[test]
fn samples_are_members_and_deterministic() {
    let bases = [AlgebraSpec::real(2), AlgebraSpec::complex_hermitian(2), AlgebraSpec::quaternion_hermitian(1)];
    for base in bases {
        let c = base.complexify(ExtensionSigma::Linear);
        let ids = [
            gid(GroupFamily::Sp2, base),
            gid(GroupFamily::O11, base),
            gid(GroupFamily::OAlg, base),
            gid(GroupFamily::AxHat, base),
            gid(GroupFamily::OcHat, base),
            gid(GroupFamily::KSp2, base),
            gid(GroupFamily::KO11, base),
            gid(GroupFamily::O2, base),
            gid(GroupFamily::KSp2C, c),
            gid(GroupFamily::Sp2, c),
        ];
        for (s, g) in ids.iter().enumerate() {
            let a = sample_group_seeded(g, s as u64).unwrap();
            assert_eq!(a, sample_group_seeded(g, s as u64).unwrap());
            let report = group_contains(g, &a.m, 1e-9).unwrap();
            assert!(report.passed(), "{g}: {:?}", report);
            let b = sample_group_seeded(g, 100 + s as u64).unwrap();
            assert!(group_contains(g, &a.mul(&b).m, 1e-9).unwrap().passed(), "{g} product");
        }
    }
}

#[test]
fn ksp2c_row_and_column_forms_agree() {
    let c = AlgebraSpec::complex_hermitian(2).complexify(ExtensionSigma::Linear);
    let g = gid(GroupFamily::KSp2C, c);
    for seed in 0..5 {
        let m = sample_group_seeded(&g, seed).unwrap().m;
        let (unit, cross) = ksp2c_row_residuals(&m);
        assert!(unit < 1e-10 && cross < 1e-10);
    }
}
