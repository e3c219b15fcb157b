use nalgebra::DMatrix;

use super::*;
use crate::algebra::{AlgebraSpec, Unit};
use crate::groups::{random_compact_lie, sample_group_seeded, GroupElement};
use crate::models::{act, line_equal, metric, tangent_contains};

const NON_COMPACT: [Family; 5] = [Family::O11, Family::Ax, Family::Oc, Family::Sp2, Family::Sp2c];
const COMPACT: [Family; 3] = [Family::CptKO11, Family::CptKSp2, Family::CptKSp2c];

fn bases() -> [AlgebraSpec; 3] {
    [AlgebraSpec::real(2), AlgebraSpec::complex_hermitian(1), AlgebraSpec::quaternion_hermitian(1)]
}

fn real(n: usize, v: &[f64]) -> AlgebraElement {
    AlgebraElement::from_real_matrix(AlgebraSpec::real(n), &DMatrix::from_row_slice(n, n, v)).unwrap()
}

fn model(family: Family, kind: ModelKind, sign: i8, over: AlgebraSpec) -> Model {
    Model::of(family, kind, sign, over).unwrap()
}

fn scalar_unit(spec: AlgebraSpec, unit: Option<Unit>) -> AlgebraElement {
    match unit {
        Some(u) => AlgebraElement::unit(spec, u, 1.0).unwrap(),
        None => AlgebraElement::identity(spec),
    }
}

fn assert_same_point(a: &ModelPoint, b: &ModelPoint, tol: f64, what: &str) {
    assert_eq!(a.model, b.model, "{what}");
    assert!(a.approx_eq(b, tol).unwrap(), "{what}: {:?} vs {:?}", a.payload, b.payload);
}

#[test]
fn eigenline_examples() {
    let r1 = AlgebraSpec::real(1);
    let cases = [(Family::O11, None), (Family::Sp2, Some(Unit::I)), (Family::Sp2c, Some(Unit::J))];
    for (family, unit) in cases {
        let c = model(family, ModelKind::C, 1, r1).basepoint();
        let x = eigenline(&c, 1).unwrap();
        let spec = *x.spec();
        let want = Pair::new(scalar_unit(spec, unit), AlgebraElement::identity(spec));
        assert!(line_equal(&x, &want, 1e-12).unwrap(), "{family:?}: {x:?}");
        assert!(eigen_residual(&c, &x, 1).unwrap() < 1e-12);
        let k = eigenline_kernel(&c, 1).unwrap();
        assert!(line_equal(&k, &want, 1e-9).unwrap(), "{family:?} kernel: {k:?}");
    }
}

#[test]
fn eigenlines_of_samples_agree_with_kernel_solve() {
    for over in bases() {
        for family in NON_COMPACT {
            let c = model(family, ModelKind::C, 1, over);
            for seed in 0..3 {
                let p = c.sample_point_seeded(seed).unwrap();
                for sign in [1, -1] {
                    let fast = eigenline(&p, sign).unwrap();
                    let slow = eigenline_kernel(&p, sign).unwrap();
                    assert!(eigen_residual(&p, &fast, sign).unwrap() < 1e-9, "{family:?} {over}");
                    assert!(eigen_residual(&p, &slow, sign).unwrap() < 1e-9, "{family:?} {over}");
                    assert!(line_equal(&fast, &slow, 1e-8).unwrap(), "{family:?} {over}");
                }
            }
        }
    }
}

#[test]
fn conversion_examples() {
    let r1 = AlgebraSpec::real(1);
    let c = model(Family::Sp2, ModelKind::C, 1, r1).basepoint();
    let p = convert(&c, ModelId::new(Family::Sp2, ModelKind::P, 1).unwrap()).unwrap();
    let spec = *p.line().unwrap().spec();
    let i = AlgebraElement::unit(spec, Unit::I, 1.0).unwrap();
    assert!(line_equal(p.line().unwrap(), &Pair::new(i.clone(), AlgebraElement::identity(spec)), 1e-12).unwrap());
    let u = convert(&p, ModelId::new(Family::Sp2, ModelKind::U, 1).unwrap()).unwrap();
    assert!(u.chart().unwrap().distance(&i) < 1e-12);
    let b = convert(&u, ModelId::new(Family::Sp2, ModelKind::B, 1).unwrap()).unwrap();
    assert!(b.chart().unwrap().norm() < 1e-12);

    let c = model(Family::O11, ModelKind::C, 1, r1).basepoint();
    let p = convert(&c, ModelId::new(Family::O11, ModelKind::P, 1).unwrap()).unwrap();
    let one = AlgebraElement::identity(r1);
    assert!(line_equal(p.line().unwrap(), &Pair::new(one.clone(), one.clone()), 1e-12).unwrap());
    let u = convert(&p, ModelId::new(Family::O11, ModelKind::U, 1).unwrap()).unwrap();
    assert!(u.chart().unwrap().distance(&one) < 1e-12);
}

#[test]
fn basepoints_correspond() {
    for over in bases() {
        for family in Family::ALL {
            let ids = model_ids(family);
            for from in &ids {
                let p = Model::new(*from, over).unwrap().basepoint();
                for to in &ids {
                    let q = convert(&p, *to).unwrap();
                    let want = Model::new(*to, over).unwrap().basepoint();
                    assert_same_point(&q, &want, 1e-10, &format!("{from} -> {to} over {over}"));
                }
            }
        }
    }
}

#[test]
fn routes_are_shortest_chains() {
    let id = |k, s| ModelId::new(Family::Sp2, k, s).unwrap();
    assert_eq!(route(id(ModelKind::C, 1), id(ModelKind::U, -1)).unwrap().len(), 3);
    assert_eq!(route(id(ModelKind::U, -1), id(ModelKind::B, 1)).unwrap().len(), 5);
    assert_eq!(route(id(ModelKind::U, 1), id(ModelKind::B, 1)).unwrap().len(), 2);
    assert!(MapId::new(id(ModelKind::C, 1), ModelId::new(Family::O11, ModelKind::U, 1).unwrap()).is_err());
    assert_eq!(MapId::primitive_edges(Family::Sp2).len(), 12);
    assert_eq!(MapId::primitive_edges(Family::CptKSp2).len(), 2);
}

#[test]
fn conversions_round_trip_and_are_equivariant() {
    for over in bases() {
        for family in Family::ALL {
            for edge in MapId::primitive_edges(family) {
                let from = Model::new(edge.from, over).unwrap();
                for seed in 0..3 {
                    let p = from.sample_point_seeded(seed).unwrap();
                    let q = convert(&p, edge.to).unwrap();
                    let back = convert(&q, edge.from).unwrap();
                    assert_same_point(&back, &p, 1e-8, &format!("{edge} over {over}"));
                    let g = sample_group_seeded(&from.group(), 100 + seed).unwrap();
                    let lhs = convert(&act(&g, &p).unwrap(), edge.to).unwrap();
                    let rhs = act(&g, &q).unwrap();
                    assert_same_point(&lhs, &rhs, 1e-8, &format!("{edge} equivariance over {over}"));
                }
            }
        }
    }
}

#[test]
fn composed_paths_agree() {
    for over in bases() {
        for family in NON_COMPACT {
            let u = model(family, ModelKind::U, 1, over);
            let p_id = ModelId::new(family, ModelKind::P, 1).unwrap();
            let b_id = ModelId::new(family, ModelKind::B, 1).unwrap();
            for seed in 0..3 {
                let z = u.sample_point_seeded(seed).unwrap();
                let direct = convert(&z, b_id).unwrap();
                let via = convert(&convert(&z, p_id).unwrap(), b_id).unwrap();
                assert_same_point(&direct, &via, 1e-8, &format!("{family:?} triangle over {over}"));
            }
        }
    }
}

#[test]
fn operators_are_recovered_from_eigenlines() {
    for over in bases() {
        for family in NON_COMPACT {
            let c = model(family, ModelKind::C, 1, over);
            for seed in 0..3 {
                let p = c.sample_point_seeded(seed).unwrap();
                for sign in [1, -1] {
                    let l = convert(&p, ModelId::new(family, ModelKind::P, sign).unwrap()).unwrap();
                    let back = convert(&l, c.id).unwrap();
                    let (a, b) = (back.operator().unwrap(), p.operator().unwrap());
                    assert!(a.distance(b) < 1e-9 * (1.0 + b.norm()), "{family:?} {sign} over {over}");
                }
            }
        }
    }
}

#[test]
fn compact_conversions_are_equivariant_under_the_compact_group() {
    for over in bases() {
        for family in COMPACT {
            let p_model = model(family, ModelKind::P, 1, over);
            let b_id = ModelId::new(family, ModelKind::B, 1).unwrap();
            let gid = p_model.group();
            let mut rng = crate::algebra::rng_from_seed(3);
            for _ in 0..3 {
                let xi = random_compact_lie(&gid, 1.0, &mut rng).unwrap();
                let g = GroupElement::new(gid, xi.exp(), 1e-9).unwrap();
                let p = act(&g, &p_model.basepoint()).unwrap();
                let lhs = convert(&p, b_id).unwrap();
                let rhs = act(&g, &Model::new(b_id, over).unwrap().basepoint()).unwrap();
                assert_same_point(&lhs, &rhs, 1e-9, &format!("{family:?} over {over}"));
            }
        }
    }
}

#[test]
fn operator_differential_example() {
    let r1 = AlgebraSpec::real(1);
    let c = model(Family::O11, ModelKind::C, 1, r1).basepoint();
    let p_id = ModelId::new(Family::O11, ModelKind::P, 1).unwrap();
    let reversing = TangentVector { at: c.clone(), payload: TangentPayload::C(real(2, &[1.0, 0.0, 0.0, -1.0])) };
    assert_eq!(differential(&reversing, p_id).unwrap_err().name(), "NotTangent");

    let l = TangentVector::new(c.clone(), TangentPayload::C(real(2, &[0.0, 1.0, -1.0, 0.0])), 1e-12).unwrap();
    let dv = differential(&l, p_id).unwrap();
    let one = AlgebraElement::identity(r1);
    let want =
        TangentVector { at: dv.at.clone(), payload: TangentPayload::P(Pair::new(one.scale(0.5), one.scale(-0.5))) };
    assert!(tangent_residual(&dv, &want).unwrap() < 1e-14);
    let zero = differential(&TangentVector::zero(c), p_id).unwrap();
    assert!(zero.payload.norm() < 1e-15);
}

fn relative_error(analytic: &TangentVector, fd: &TangentVector) -> f64 {
    tangent_residual(analytic, fd).unwrap() / tangent_size(analytic).unwrap().max(1e-12)
}

#[test]
fn differentials_match_finite_differences() {
    for over in bases() {
        for family in NON_COMPACT {
            for edge in MapId::primitive_edges(family) {
                let from = Model::new(edge.from, over).unwrap();
                for seed in 0..2 {
                    let p = from.sample_point_seeded(seed).unwrap();
                    let v = p.sample_tangent_seeded(50 + seed).unwrap();
                    let analytic = differential(&v, edge.to).unwrap();
                    let report = tangent_contains(&analytic.at, &analytic.payload, 1e-8).unwrap();
                    assert!(report.passed(), "{edge} over {over}: {:?}", report.failures());
                    let fd = differential_fd(&v, edge.to, DEFAULT_FD_STEP).unwrap();
                    let err = relative_error(&analytic, &fd);
                    assert!(err < 1e-5, "{edge} over {over}: relative error {err:.3e}");
                }
            }
        }
    }
}

#[test]
fn finite_differences_converge_quadratically() {
    let over = AlgebraSpec::real(2);
    for family in [Family::O11, Family::Sp2, Family::Sp2c] {
        let c = model(family, ModelKind::C, 1, over);
        let p = c.sample_point_seeded(7).unwrap();
        let v = p.sample_tangent_seeded(8).unwrap();
        let to = ModelId::new(family, ModelKind::U, 1).unwrap();
        let analytic = differential(&v, to).unwrap();
        let h = 1e-2;
        let e1 = relative_error(&analytic, &difference_quotient(&v, to, h).unwrap());
        let e2 = relative_error(&analytic, &difference_quotient(&v, to, h / 2.0).unwrap());
        let ratio = e1 / e2;
        assert!((3.0..5.0).contains(&ratio), "{family:?}: error ratio {ratio}");
    }
}

#[test]
fn affine_maps_are_differentiated_exactly() {
    let u = model(Family::Ax, ModelKind::U, 1, AlgebraSpec::real(2));
    let p = u.sample_point_seeded(1).unwrap();
    let v = p.sample_tangent_seeded(2).unwrap();
    let fd = differential_fd(&v, u.id, 0.25).unwrap();
    assert!(tangent_residual(&v, &fd).unwrap() < 1e-12);
}

#[test]
fn differentials_compose() {
    for over in bases() {
        for family in NON_COMPACT {
            let c = model(family, ModelKind::C, 1, over);
            let p = c.sample_point_seeded(4).unwrap();
            let v = p.sample_tangent_seeded(5).unwrap();
            let b = ModelId::new(family, ModelKind::B, 1).unwrap();
            let direct = differential(&v, b).unwrap();
            let mut stepwise = v.clone();
            for next in route(c.id, b).unwrap().into_iter().skip(1) {
                stepwise = differential(&stepwise, next).unwrap();
            }
            assert!(tangent_residual(&direct, &stepwise).unwrap() < 1e-8 * (1.0 + direct.payload.norm()));
        }
    }
}

#[test]
fn metric_pulls_back_through_the_disk() {
    for over in bases() {
        for family in NON_COMPACT {
            let u = model(family, ModelKind::U, 1, over);
            let b = ModelId::new(family, ModelKind::B, 1).unwrap();
            let p = u.sample_point_seeded(6).unwrap();
            let (v, w) = (p.sample_tangent_seeded(7).unwrap(), p.sample_tangent_seeded(8).unwrap());
            let (bv, bw) = (differential(&v, b).unwrap(), differential(&w, b).unwrap());
            let (uv, uw) = (differential(&bv, u.id).unwrap(), differential(&bw, u.id).unwrap());
            let e = |t: &TangentVector| t.payload.element().unwrap().clone();
            let direct = metric(&p, &e(&v), &e(&w)).unwrap();
            let pulled = metric(&uv.at, &e(&uv), &e(&uw)).unwrap();
            assert!((direct - pulled).abs() < 1e-8 * direct.abs().max(1.0), "{family:?} over {over}");
        }
    }
}

#[test]
fn canonical_coordinates_at_the_base_point() {
    let r1 = AlgebraSpec::real(1);
    let c = model(Family::Sp2, ModelKind::C, 1, r1).basepoint();
    let zero = canonical_tangent_coords(&TangentVector::zero(c.clone())).unwrap();
    assert!((zero.r.distance(&AlgebraElement::identity(r1))) < 1e-15);
    assert!(zero.l.norm() < 1e-15 && zero.a_plus.norm() < 1e-15 && zero.a_minus.norm() < 1e-15);
    assert!(zero.normalization_residual().unwrap() < 1e-14);
}

#[test]
fn canonical_coordinates_of_samples() {
    for over in bases() {
        let c = model(Family::Sp2, ModelKind::C, 1, over);
        for seed in 0..4 {
            let p = c.sample_point_seeded(seed).unwrap();
            let v = p.sample_tangent_seeded(20 + seed).unwrap();
            let coords = canonical_tangent_coords(&v).unwrap();
            assert!(coords.rl_residual().unwrap() < 1e-10, "over {over}");
            assert!(coords.split_residual() < 1e-9, "over {over}");
            assert!(coords.normalization_residual().unwrap() < 1e-10, "over {over}");
            let l = v.payload.element().unwrap().lift(coords.a_plus.spec()).unwrap();
            assert!(coords.reconstruct().unwrap().distance(&l) < 1e-9 * (1.0 + l.norm()), "over {over}");
            let conj = coords.a_plus.theta(Unit::I).unwrap();
            assert!(conj.distance(&coords.a_minus) < 1e-9 * (1.0 + conj.norm()), "over {over}");
        }
    }
}

#[test]
fn non_members_are_rejected() {
    let u = model(Family::Sp2, ModelKind::U, 1, AlgebraSpec::real(1));
    let spec = u.point_spec();
    let bad = ModelPoint { model: u, payload: Payload::U(AlgebraElement::unit(spec, Unit::I, -1.0).unwrap()) };
    let to = ModelId::new(Family::Sp2, ModelKind::B, 1).unwrap();
    assert_eq!(convert(&bad, to).unwrap_err().name(), "NotInModel");
    let flat = Pair::new(AlgebraElement::identity(spec), AlgebraElement::zeros(spec));
    assert_eq!(chart_of_line(&flat).unwrap_err().name(), "NonTransverse");
}

#[test]
fn retraction_rejects_far_points() {
    let c = model(Family::O11, ModelKind::C, 1, AlgebraSpec::real(1));
    let far = Payload::C { j: real(2, &[0.0, 1.0, -1.0, 0.0]), anti_linear: false };
    assert_eq!(retract(&c, &far).unwrap_err().name(), "StepTooLarge");
}

#[test]
fn orthogonal_lines_are_orthogonal_and_transverse() {
    for over in bases() {
        for family in NON_COMPACT {
            for sign in [1, -1] {
                let m = model(family, ModelKind::P, sign, over);
                let (h, _) = crate::models::membership::projective_forms(&m);
                let h = h.unwrap();
                for seed in 0..3 {
                    let p = m.sample_point_seeded(seed).unwrap();
                    let q = orthogonal_line(&p).unwrap();
                    assert_eq!(q.model.id.sign, -sign);
                    let (x, y) = (p.line().unwrap(), q.line().unwrap());
                    let pairing = crate::models::eval_form(&h, x, y).unwrap();
                    assert!(pairing.norm() < 1e-9 * x.norm() * y.norm(), "{family:?} over {over}");
                    let frame = AlgebraElement::from_blocks(&x.first, &y.first, &x.second, &y.second).unwrap();
                    assert!(frame.inv().is_ok());
                }
            }
        }
    }
}
