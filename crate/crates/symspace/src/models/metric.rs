//! The invariant Riemannian metric on the half-space models.

use crate::algebra::{AlgebraElement, Unit};
use crate::error::{Error, Result};

use super::{imaginary_part, normalize_payload, Family, Model, ModelKind, ModelPoint, Payload};

/// The positive element `y` at a half-space point: `sign·(z + σ(z))/2`,
/// `sign·Im z` or `sign·Im_ℂ z`.
pub fn metric_y(p: &ModelPoint) -> Result<AlgebraElement> {
    let z = half_space_point(p)?;
    Ok(imaginary_part(p.model.id.family, &z).scale(p.model.id.sign_f64()))
}

fn half_space_point(p: &ModelPoint) -> Result<AlgebraElement> {
    if p.model.id.kind != ModelKind::U || p.model.id.family.is_compact() {
        return Err(Error::NotInModel(format!("the metric is evaluated on half-space points, got {}", p.model.id)));
    }
    match normalize_payload(&p.model, &p.payload)? {
        Payload::U(z) => Ok(z),
        _ => unreachable!("kind checked above"),
    }
}

/// `q(v) = tr(r·σ*(v)·y⁻¹·v·r)`, with `r = y^{-1/2}` (twisted by `θ_i` on
/// the outer factors for `Sp₂(A_ℂ, σ_ℂ)`) and `σ*` the Hermitian involution
/// of the chart algebra.
pub fn metric_quadratic(p: &ModelPoint, v: &AlgebraElement) -> Result<f64> {
    let model = p.model;
    let spec = model.point_spec();
    if !v.spec().same_algebra(&spec) {
        return Err(Error::SpecMismatch(format!("tangent over {}, expected {}", v.spec(), spec)));
    }
    let v = v.clone().retag(spec);
    let y = metric_y(p)?;
    let tau = y.spec().sigma;
    let inv = y.inv()?.lift(&spec)?;
    let r = y.positive_power(&tau, -0.5)?.lift(&spec)?;
    let outer = if model.id.family == Family::Sp2c { r.theta(Unit::I)? } else { r };
    let star = v.apply_sigma(&model.hermitian_sigma());
    Ok((&outer * &star * &inv * &v * &outer).reduced_trace())
}

/// The bilinear metric by polarization, `(q(v + w) − q(v − w))/4`.
pub fn metric(p: &ModelPoint, v: &AlgebraElement, w: &AlgebraElement) -> Result<f64> {
    let plus = metric_quadratic(p, &v.checked_add(w)?)?;
    let minus = metric_quadratic(p, &v.checked_sub(w)?)?;
    Ok(0.25 * (plus - minus))
}

/// The metric at the base point, `tr(v∘w)` with
/// `v∘w = (σ*(v)w + σ*(w)v)/2`.
pub fn metric_at_base(model: &Model, v: &AlgebraElement, w: &AlgebraElement) -> Result<f64> {
    let spec = model.point_spec();
    if !v.spec().same_algebra(&spec) || !w.spec().same_algebra(&spec) {
        return Err(Error::SpecMismatch(format!("tangents over {} and {}, expected {}", v.spec(), w.spec(), spec)));
    }
    let tau = model.hermitian_sigma();
    let (v, w) = (v.clone().retag(spec), w.clone().retag(spec));
    let sym = v.apply_sigma(&tau) * &w + w.apply_sigma(&tau) * &v;
    Ok(0.5 * sym.reduced_trace())
}
