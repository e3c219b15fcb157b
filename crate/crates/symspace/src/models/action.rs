//! Group actions on points and tangent vectors.

use crate::algebra::{AlgebraElement, Pair, Unit};
use crate::error::{Error, Result};
use crate::groups::GroupElement;

use super::{
    normalize_payload, normalize_tangent, Model, ModelKind, ModelPoint, Payload, TangentPayload, TangentVector,
};

/// The matrix by which a group (or Lie algebra) element `m` of the model's
/// group acts on the payload: lifted to the point algebra, and conjugated
/// by the family's fixed matrix for the precompact model.
fn acting_matrix(model: &Model, m: &AlgebraElement) -> Result<AlgebraElement> {
    let gid = model.group();
    if !m.spec().same_algebra(&gid.matrix_spec()) {
        return Err(Error::NotInGroup(format!("{} is not a matrix of {}", m.spec(), gid)));
    }
    let spec = model.point_spec();
    let lifted = m.lift(&spec)?;
    match model.id.kind {
        ModelKind::B => model.id.family.conjugator().conjugate(&lifted),
        _ => Ok(lifted),
    }
}

fn check_group(model: &Model, g: &GroupElement) -> Result<()> {
    if g.gid != model.group() {
        return Err(Error::NotInGroup(format!("{} does not act on {}", g.gid, model.id)));
    }
    Ok(())
}

fn theta(x: &AlgebraElement) -> AlgebraElement {
    x.theta(Unit::I).expect("complexified algebra")
}

/// `(az + b)(cz + d)⁻¹` for `m = [[a, b], [c, d]]`.
pub fn moebius(m: &AlgebraElement, z: &AlgebraElement) -> Result<AlgebraElement> {
    let [a, b, c, d] = m.split_blocks();
    let den = (&c * z + d).inv().map_err(|_| Error::SingularDenominator)?;
    Ok((&a * z + b) * den)
}

/// Derivative of [`moebius`] at `z` in direction `v`:
/// `av(cz + d)⁻¹ − (az + b)(cz + d)⁻¹cv(cz + d)⁻¹`.
pub fn moebius_derivative(m: &AlgebraElement, z: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
    let [a, b, c, d] = m.split_blocks();
    let den = (&c * z + d).inv().map_err(|_| Error::SingularDenominator)?;
    let image = (&a * z + b) * &den;
    Ok(&a * v * &den - image * c * v * den)
}

/// Conjugation `gJg⁻¹`, or `gJθ_i(g⁻¹)` for anti-linear operators.
fn conjugate_operator(m: &AlgebraElement, j: &AlgebraElement, anti_linear: bool) -> Result<AlgebraElement> {
    let inv = m.inv()?;
    Ok(if anti_linear { m * j * theta(&inv) } else { m * j * inv })
}

/// Action of a group element on a model point.
pub fn act(g: &GroupElement, p: &ModelPoint) -> Result<ModelPoint> {
    let model = p.model;
    check_group(&model, g)?;
    let m = acting_matrix(&model, &g.m)?;
    let payload = match normalize_payload(&model, &p.payload)? {
        Payload::C { j, anti_linear } => Payload::C { j: conjugate_operator(&m, &j, anti_linear)?, anti_linear },
        Payload::P(x) => Payload::P(Pair::apply(&m, &x)),
        Payload::U(z) => Payload::U(moebius(&m, &z)?),
        Payload::B(z) => Payload::B(moebius(&m, &z)?),
    };
    Ok(ModelPoint { model, payload })
}

/// Action of a group element on a tangent vector (the differential of
/// [`act`]).
pub fn act_tangent(g: &GroupElement, v: &TangentVector) -> Result<TangentVector> {
    let model = v.at.model;
    check_group(&model, g)?;
    let m = acting_matrix(&model, &g.m)?;
    let at = act(g, &v.at)?;
    let point = normalize_payload(&model, &v.at.payload)?;
    let payload = match (point, normalize_tangent(&model, &v.payload)?) {
        (Payload::C { anti_linear, .. }, TangentPayload::C(l)) => {
            TangentPayload::C(conjugate_operator(&m, &l, anti_linear)?)
        }
        (Payload::P(_), TangentPayload::P(w)) => TangentPayload::P(Pair::apply(&m, &w)),
        (Payload::U(z) | Payload::B(z), TangentPayload::Chart(w)) => {
            TangentPayload::Chart(moebius_derivative(&m, &z, &w)?)
        }
        _ => return Err(Error::SpecMismatch(format!("tangent payload does not match {}", model.id))),
    };
    Ok(TangentVector { at, payload })
}

/// The tangent vector `d/dt exp(tξ)·p` at `t = 0` for a Lie algebra element
/// `ξ` of the model's group.
pub fn infinitesimal_action(xi: &AlgebraElement, p: &ModelPoint) -> Result<TangentVector> {
    let model = p.model;
    let m = acting_matrix(&model, xi)?;
    let payload = match normalize_payload(&model, &p.payload)? {
        Payload::C { j, anti_linear } => {
            let right = if anti_linear { &j * &theta(&m) } else { &j * &m };
            TangentPayload::C(&m * &j - right)
        }
        Payload::P(x) => TangentPayload::P(Pair::apply(&m, &x)),
        Payload::U(z) | Payload::B(z) => {
            let [a, b, c, d] = m.split_blocks();
            TangentPayload::Chart(&a * &z + b - &z * (&c * &z + d))
        }
    };
    Ok(TangentVector { at: p.clone(), payload })
}
