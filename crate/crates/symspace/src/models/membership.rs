//! Defining conditions of model points and tangent vectors.

use crate::algebra::linalg::{regularity, solve_right};
use crate::algebra::{AlgebraElement, AntiInvolution, ExtensionSigma, Pair, Unit};
use crate::error::{Error, Result};
use crate::groups::MembershipReport;

use super::forms::{eval_form, FormKind, SesquilinearForm};
use super::{
    imaginary_part, normalize_payload, normalize_tangent, Family, Model, ModelKind, ModelPoint, Payload, TangentPayload,
};

/// Below this reciprocal condition a line representative counts as singular.
pub(crate) const REGULARITY_FLOOR: f64 = 1e-10;

/// `‖x − sign·τ(x)‖`.
fn symmetry_residual(x: &AlgebraElement, tau: &AntiInvolution, sign: f64) -> f64 {
    x.distance(&x.apply_sigma(tau).scale(sign))
}

/// Residual of `x ∈ A^τ_+`: the symmetry defect if it is not `τ`-symmetric,
/// otherwise how far the smallest eigenvalue is below zero.
fn cone_residual(x: &AlgebraElement, tau: &AntiInvolution) -> f64 {
    let sym = symmetry_residual(x, tau, 1.0);
    if sym > crate::algebra::DEFAULT_TOL * (1.0 + x.norm()) {
        return sym;
    }
    let h = x.symmetry_part(tau, 1.0);
    (-h.min_eigenvalue()).max(0.0)
}

/// `(h, isotropy form)` of the projective model of each family.
pub(crate) fn projective_forms(model: &Model) -> (Option<SesquilinearForm>, Option<SesquilinearForm>) {
    let spec = model.point_spec();
    let s = spec.sigma;
    let with = |ext| AntiInvolution { ext, ..s };
    let form = SesquilinearForm::new;
    match model.id.family {
        Family::O11 => (Some(form(FormKind::OmegaIndef, s)), None),
        Family::Ax => (Some(form(FormKind::OmegaIndef, s)), Some(form(FormKind::OmegaSymp, s))),
        Family::Oc => (Some(form(FormKind::OmegaIndef, s)), Some(form(FormKind::Bdiag, s))),
        Family::Sp2 => {
            (Some(form(FormKind::HSp2, with(ExtensionSigma::Conjugate))), Some(form(FormKind::OmegaSymp, s)))
        }
        Family::Sp2c => (Some(form(FormKind::HSp2c, with(ExtensionSigma::Sigma1))), Some(form(FormKind::OmegaH, s))),
        Family::CptKO11 => (None, Some(form(FormKind::OmegaIndef, s))),
        Family::CptKSp2 | Family::CptKSp2c => (None, Some(form(FormKind::OmegaSymp, s))),
    }
}

/// The form `h` whose Gram matrix `σ(J)ᵗ·G` must be an inner product on
/// operator-model points, together with the involution of that inner
/// product.
pub(crate) fn operator_form(model: &Model) -> (SesquilinearForm, AntiInvolution) {
    let s = model.point_spec().sigma;
    match model.id.family {
        Family::Sp2 => (SesquilinearForm::new(FormKind::OmegaSymp, s), s),
        Family::Sp2c => {
            (SesquilinearForm::new(FormKind::OmegaSymp, s), AntiInvolution { ext: ExtensionSigma::Conjugate, ..s })
        }
        _ => (SesquilinearForm::new(FormKind::OmegaIndef, s), s),
    }
}

/// The extra form that orthogonal-type operators must reverse, if any.
fn reversed_form(model: &Model) -> Option<SesquilinearForm> {
    let s = model.point_spec().sigma;
    match model.id.family {
        Family::Ax => Some(SesquilinearForm::new(FormKind::OmegaSymp, s)),
        Family::Oc => Some(SesquilinearForm::new(FormKind::Bdiag, s)),
        _ => None,
    }
}

fn theta(x: &AlgebraElement) -> AlgebraElement {
    x.theta(Unit::I).expect("complexified algebra")
}

/// Evaluates the defining conditions of `model` on `payload`.
pub fn contains(model: &Model, payload: &Payload, tol: f64) -> Result<MembershipReport> {
    let n = model.over.n;
    let family = model.id.family;
    let s = model.id.sign_f64();
    let mut report = MembershipReport::new(tol);
    let payload = &normalize_payload(model, payload)?;
    match payload {
        Payload::C { j, anti_linear } => {
            if *anti_linear != (family == Family::Sp2c) {
                return Err(Error::SpecMismatch("operator linearity does not match the family".into()));
            }
            let square = if *anti_linear { j * &theta(j) } else { j * j };
            if family.is_orthogonal_type() {
                report.push("J^2 = 1", square.add_scalar(-1.0).norm());
            } else {
                report.push("J^2 = -1", square.add_scalar(1.0).norm());
            }
            let (h, tau) = operator_form(model);
            let gram = h.pulled_gram(j)?;
            report.push("h_J inner product", cone_residual(&gram, &tau));
            if let Some(f) = reversed_form(model) {
                let g = f.gram(&j.spec().with_n(n))?;
                report.push("J reverses the form", (f.pulled_gram(j)? * j + g).norm());
            }
        }
        Payload::P(x) => {
            let reg = regularity(x);
            report.push("x regular", if reg < REGULARITY_FLOOR { 1.0 - reg } else { 0.0 });
            let (h, iso) = projective_forms(model);
            if let Some(h) = h {
                let hx = eval_form(&h, x, x)?;
                report.push("sign * h(x,x) positive", cone_residual(&hx.scale(s), &h.sigma));
            }
            if let Some(iso) = iso {
                report.push("x isotropic", eval_form(&iso, x, x)?.norm());
            }
        }
        Payload::U(z) => {
            let tau = model.hermitian_sigma();
            match family {
                Family::O11 => {}
                Family::Ax => report.push("z symmetric", symmetry_residual(z, &z.spec().sigma, 1.0)),
                Family::Oc => report.push("sigma(z)z = 1", (z.sigma() * z).add_scalar(-1.0).norm()),
                Family::Sp2 | Family::Sp2c => report.push("z symmetric", symmetry_residual(z, &z.spec().sigma, 1.0)),
                _ => unreachable!("compact families have no half-space model"),
            }
            let y = imaginary_part(family, z).scale(s);
            let cone_sigma = match family {
                Family::Sp2 | Family::Sp2c => y.spec().sigma,
                _ => tau,
            };
            report.push("sign * Im z positive", cone_residual(&y, &cone_sigma));
        }
        Payload::B(z) => {
            let tau = model.hermitian_sigma();
            let own = z.spec().sigma;
            match family {
                Family::Ax => report.push("z symmetric", symmetry_residual(z, &own, 1.0)),
                Family::Oc => report.push("z skew", symmetry_residual(z, &own, -1.0)),
                Family::Sp2 | Family::Sp2c | Family::CptKSp2 | Family::CptKSp2c => {
                    report.push("z symmetric", symmetry_residual(z, &own, 1.0))
                }
                _ => {}
            }
            let defect = match family {
                Family::Ax => (z * z).scale(-1.0).add_scalar(1.0),
                Family::Oc => (z * z).add_scalar(1.0),
                _ => (z.apply_sigma(&tau) * z).scale(-1.0).add_scalar(1.0),
            };
            if family.is_compact() {
                report.push("1 - sigma(z)z = 0", defect.norm());
            } else {
                report.push("1 - sigma(z)z positive", cone_residual(&defect, &tau));
            }
        }
    }
    Ok(report)
}

/// Evaluates the tangency conditions of `v` at `p`.
pub fn tangent_contains(p: &ModelPoint, v: &TangentPayload, tol: f64) -> Result<MembershipReport> {
    let model = &p.model;
    let family = model.id.family;
    if family.is_compact() {
        return Err(Error::Unsupported("tangent vectors of compact models".into()));
    }
    let point_report = contains(model, &p.payload, tol.max(crate::algebra::DEFAULT_TOL))?;
    if !point_report.passed() {
        return Err(Error::NotInModel(format!("{}: {}", model.id, point_report.failures().join(", "))));
    }
    let mut report = MembershipReport::new(tol);
    let point = normalize_payload(model, &p.payload)?;
    let v = &normalize_tangent(model, v)?;
    match (&point, v) {
        (Payload::C { j, anti_linear }, TangentPayload::C(l)) => {
            let anti = if *anti_linear { l * &theta(j) + j * &theta(l) } else { l * j + j * l };
            report.push("LJ + JL = 0", anti.norm());
            let (h, tau) = operator_form(model);
            report.push("h_L symmetric", symmetry_residual(&h.pulled_gram(l)?, &tau, 1.0));
            if let Some(f) = reversed_form(model) {
                let d = f.pulled_gram(l)? * j + f.pulled_gram(j)? * l;
                report.push("derivative of J reversing the form", d.norm());
            }
        }
        (Payload::P(x), TangentPayload::P(w)) => {
            if let (_, Some(iso)) = projective_forms(model) {
                let d = eval_form(&iso, w, x)? + eval_form(&iso, x, w)?;
                report.push("derivative of isotropy", d.norm());
            }
        }
        (Payload::U(z) | Payload::B(z), TangentPayload::Chart(w)) => {
            let own = w.spec().sigma;
            match (family, model.id.kind) {
                (Family::O11, _) => {}
                (Family::Oc, ModelKind::U) => {
                    report.push("sigma(z)v skew", symmetry_residual(&(z.sigma() * w), &own, -1.0))
                }
                (Family::Oc, _) => report.push("v skew", symmetry_residual(w, &own, -1.0)),
                _ => report.push("v symmetric", symmetry_residual(w, &own, 1.0)),
            }
        }
        _ => return Err(Error::SpecMismatch(format!("tangent payload does not match {}", model.id))),
    }
    Ok(report)
}

/// Whether `x` and `y` span the same line: the least-squares `a` with
/// `x·a ≈ y` has residual at most `tol·‖y‖` and is invertible.
pub fn line_equal(x: &Pair, y: &Pair, tol: f64) -> Result<bool> {
    for z in [x, y] {
        if regularity(z) < REGULARITY_FLOOR {
            return Err(Error::NotRegular(format!("representative of norm {:.3e}", z.norm())));
        }
    }
    if !x.spec().same_algebra(y.spec()) {
        return Err(Error::SpecMismatch(format!("{} vs {}", x.spec(), y.spec())));
    }
    let (a, _) = solve_right(x, y)?;
    let residual = x.right_mul(&a).sub(y).norm();
    Ok(residual <= tol * y.norm() && a.inv().is_ok())
}
