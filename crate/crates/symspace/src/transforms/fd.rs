//! Finite-difference oracle for [`super::differential`].

use crate::algebra::linalg::solve_right;
use crate::algebra::{AlgebraElement, Unit};
use crate::error::{Error, Result};
use crate::models::{
    contains, normalize_payload, normalize_tangent, Family, Model, ModelId, ModelPoint, Payload, TangentPayload,
    TangentVector,
};

use super::{convert, payload_norm};

/// Default step of [`differential_fd`].
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Membership tolerance a retracted point has to meet, relative to the
/// squared size of the point.
const RETRACT_TOL: f64 = 1e-8;

const MAX_SIGN_ITERATIONS: usize = 100;

fn theta(x: &AlgebraElement) -> AlgebraElement {
    x.theta(Unit::I).expect("complexified algebra")
}

fn step_too_large(e: Error) -> Error {
    Error::StepTooLarge(e.to_string())
}

/// Newton iteration for the matrix sign: `J ← (J + J⁻¹)/2` for involutions,
/// `J ← (J − J⁻¹)/2` for complex structures and `M ← (M − θ_i(M)⁻¹)/2` for
/// anti-linear ones.
fn sign_iteration(family: Family, j: &AlgebraElement) -> Result<AlgebraElement> {
    let mut m = j.clone();
    let mut previous = f64::INFINITY;
    for _ in 0..MAX_SIGN_ITERATIONS {
        let next = match family {
            Family::Sp2c => (&m - &theta(&m).inv()?).scale(0.5),
            Family::Sp2 => (&m - &m.inv()?).scale(0.5),
            _ => (&m + &m.inv()?).scale(0.5),
        };
        let delta = next.distance(&m);
        m = next;
        let scale = 1.0 + m.norm();
        // Converged, or stalled at rounding level once quadratic convergence stops.
        if delta <= 1e-14 * scale || (delta <= 1e-9 * scale && delta > 0.5 * previous) {
            return Ok(m);
        }
        previous = delta;
    }
    Err(Error::StepTooLarge("sign iteration did not converge".into()))
}

/// Projects a chart element onto the defining (non-open) conditions of the
/// chart model.
fn project_chart(family: Family, kind_is_u: bool, z: &AlgebraElement) -> Result<AlgebraElement> {
    let own = z.spec().sigma;
    Ok(match family {
        Family::O11 => z.clone(),
        Family::Oc if kind_is_u => {
            let gram = z.sigma() * z;
            z * &gram.positive_power(&own, -0.5)?
        }
        Family::Oc => z.symmetry_part(&own, -1.0),
        _ => z.symmetry_part(&own, 1.0),
    })
}

/// The nearest point of the model to `payload`, for payloads near the
/// model: the matrix sign for operators, and a projection in the chart for
/// the other models. Fails with [`Error::StepTooLarge`] when the result is
/// not a member.
pub fn retract(model: &Model, payload: &Payload) -> Result<ModelPoint> {
    let family = model.id.family;
    if family.is_compact() {
        return Err(Error::Unsupported("retraction onto compact models".into()));
    }
    let payload = match normalize_payload(model, payload)? {
        Payload::C { j, anti_linear } => {
            Payload::C { j: sign_iteration(family, &j).map_err(step_too_large)?, anti_linear }
        }
        Payload::P(x) => {
            let z = &x.first * &x.second.inv().map_err(step_too_large)?;
            let z = project_chart(family, true, &z).map_err(step_too_large)?;
            let one = AlgebraElement::identity(*z.spec());
            Payload::P(crate::algebra::Pair::new(z, one))
        }
        Payload::U(z) => Payload::U(project_chart(family, true, &z).map_err(step_too_large)?),
        Payload::B(z) => Payload::B(project_chart(family, false, &z).map_err(step_too_large)?),
    };
    let scale = 1.0 + payload_norm(&payload);
    let report = contains(model, &payload, RETRACT_TOL * scale * scale)?;
    if !report.passed() {
        return Err(Error::StepTooLarge(format!("retraction left {}: {}", model.id, report.failures().join(", "))));
    }
    Ok(ModelPoint { model: *model, payload })
}

fn shifted(p: &Payload, v: &TangentPayload, t: f64) -> Result<Payload> {
    Ok(match (p, v) {
        (Payload::C { j, anti_linear }, TangentPayload::C(l)) => {
            Payload::C { j: j + &l.scale(t), anti_linear: *anti_linear }
        }
        (Payload::P(x), TangentPayload::P(w)) => Payload::P(x.add(&w.scale(t))),
        (Payload::U(z), TangentPayload::Chart(w)) => Payload::U(z + &w.scale(t)),
        (Payload::B(z), TangentPayload::Chart(w)) => Payload::B(z + &w.scale(t)),
        _ => return Err(Error::ShapeMismatch("tangent payload does not match the point".into())),
    })
}

/// Central difference `(F(R(p + hv)) − F(R(p − hv)))/2h` of the conversion
/// `F` to `to` along the retracted line `R(p + tv)`. Projective images are
/// aligned to the representative of `F(p)` before subtracting.
pub fn difference_quotient(v: &TangentVector, to: ModelId, h: f64) -> Result<TangentVector> {
    let model = v.at.model;
    let at = ModelPoint { model, payload: normalize_payload(&model, &v.at.payload)? };
    let dir = normalize_tangent(&model, &v.payload)?;
    let base = convert(&at, to)?;
    let image = |t: f64| -> Result<Payload> {
        let q = retract(&model, &shifted(&at.payload, &dir, t)?)?;
        Ok(convert(&q, to)?.payload)
    };
    let (plus, minus) = (image(h)?, image(-h)?);
    let inv = 0.5 / h;
    let payload = match (&base.payload, plus, minus) {
        (Payload::C { .. }, Payload::C { j: a, .. }, Payload::C { j: b, .. }) => {
            TangentPayload::C((&a - &b).scale(inv))
        }
        (Payload::P(x0), Payload::P(a), Payload::P(b)) => {
            let align = |y: &crate::algebra::Pair| -> Result<crate::algebra::Pair> {
                let (g, _) = solve_right(y, x0)?;
                Ok(y.right_mul(&g))
            };
            TangentPayload::P(align(&a)?.sub(&align(&b)?).scale(inv))
        }
        (Payload::U(_), Payload::U(a), Payload::U(b)) | (Payload::B(_), Payload::B(a), Payload::B(b)) => {
            TangentPayload::Chart((&a - &b).scale(inv))
        }
        _ => unreachable!("conversions land in the target model"),
    };
    Ok(TangentVector { at: base, payload })
}

/// Finite-difference estimate of [`super::differential`]: the central
/// difference with one Richardson level, `(4D(h/2) − D(h))/3`.
pub fn differential_fd(v: &TangentVector, to: ModelId, h: f64) -> Result<TangentVector> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::StepTooLarge(format!("step must be positive, got {h}")));
    }
    let coarse = difference_quotient(v, to, h)?;
    let fine = difference_quotient(v, to, 0.5 * h)?;
    let payload = fine.payload.scale(4.0 / 3.0).add(&coarse.payload.scale(-1.0 / 3.0))?;
    Ok(TangentVector { at: fine.at, payload })
}
