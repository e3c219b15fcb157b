//! The equivariant diffeomorphisms between the models of one family, their
//! differentials, and a finite-difference oracle for both.
//!
//! Primitive edges join the operator model to both projective models, each
//! projective model to the half-space model of the same sign, and the
//! positive projective and half-space models to the precompact model. The
//! compact families only have the projective and precompact models, joined
//! by one edge. Any other conversion composes primitive edges along a
//! shortest route.

mod coords;
mod eigen;
mod fd;
#[cfg(test)]
mod tests;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::algebra::linalg::{linear_map_matrix, solve_right, svd};
use crate::algebra::{AlgebraElement, AlgebraSpec, Pair};
use crate::error::{Error, Result};
use crate::models::{
    contains, moebius, moebius_derivative, normalize_payload, normalize_tangent, tangent_contains, Family, Model,
    ModelId, ModelKind, ModelPoint, Payload, TangentPayload, TangentVector,
};

pub use coords::{canonical_tangent_coords, CanonicalTangentCoords};
pub use eigen::{
    apply_operator, eigen_residual, eigenline, eigenline_kernel, eigenvalue, operator_from_line,
    operator_from_line_derivative,
};
pub use fd::{difference_quotient, differential_fd, retract, DEFAULT_FD_STEP};

/// Membership tolerance for inputs of [`convert`] and [`differential`],
/// scaled by `(1 + ‖payload‖)²`.
pub const INPUT_TOL: f64 = 1e-7;

/// A map between two models of the same family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MapId {
    pub from: ModelId,
    pub to: ModelId,
}

impl MapId {
    /// Checked constructor: both ends belong to one family and are joined by
    /// a route of primitive edges.
    pub fn new(from: ModelId, to: ModelId) -> Result<Self> {
        route(from, to)?;
        Ok(MapId { from, to })
    }

    pub fn family(&self) -> Family {
        self.from.family
    }

    /// Whether the map is a single primitive edge.
    pub fn is_primitive(&self) -> bool {
        neighbours(self.from).contains(&self.to)
    }

    /// The models visited, both ends included.
    pub fn route(&self) -> Vec<ModelId> {
        route(self.from, self.to).expect("checked on construction")
    }

    /// Every primitive edge of a family, in both directions.
    pub fn primitive_edges(family: Family) -> Vec<MapId> {
        model_ids(family)
            .into_iter()
            .flat_map(|from| neighbours(from).into_iter().map(move |to| MapId { from, to }))
            .collect()
    }
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

/// All models of a family.
pub fn model_ids(family: Family) -> Vec<ModelId> {
    let mut out = Vec::new();
    for kind in ModelKind::ALL {
        for sign in [1, -1] {
            if let Ok(id) = ModelId::new(family, kind, sign) {
                if !out.contains(&id) {
                    out.push(id);
                }
            }
        }
    }
    out
}

fn id(family: Family, kind: ModelKind, sign: i8) -> ModelId {
    ModelId::new(family, kind, sign).expect("supported model")
}

/// The models joined to `from` by a primitive edge.
fn neighbours(from: ModelId) -> Vec<ModelId> {
    use ModelKind::*;
    let f = from.family;
    let s = from.sign;
    if f.is_compact() {
        return match from.kind {
            P => vec![id(f, B, 1)],
            B => vec![id(f, P, 1)],
            _ => vec![],
        };
    }
    let mut out = match from.kind {
        C => vec![id(f, P, 1), id(f, P, -1)],
        P => vec![id(f, C, 1), id(f, U, s)],
        U => vec![id(f, P, s)],
        B => vec![id(f, P, 1), id(f, U, 1)],
    };
    if matches!(from.kind, P | U) && s > 0 {
        out.push(id(f, B, 1));
    }
    out
}

/// A shortest chain of primitive edges from `from` to `to`.
pub fn route(from: ModelId, to: ModelId) -> Result<Vec<ModelId>> {
    if from.family != to.family {
        return Err(Error::Unsupported(format!("no map between {from} and {to}")));
    }
    let mut parent: HashMap<ModelId, ModelId> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(cur) = queue.pop_front() {
        if cur == to {
            let mut path = vec![to];
            let mut node = to;
            while node != from {
                node = parent[&node];
                path.push(node);
            }
            path.reverse();
            return Ok(path);
        }
        for next in neighbours(cur) {
            if next != from && !parent.contains_key(&next) {
                parent.insert(next, cur);
                queue.push_back(next);
            }
        }
    }
    Err(Error::Unsupported(format!("no map between {from} and {to}")))
}

fn payload_norm(p: &Payload) -> f64 {
    match p {
        Payload::C { j, .. } => j.norm(),
        Payload::P(x) => x.norm(),
        Payload::U(z) | Payload::B(z) => z.norm(),
    }
}

fn check_point(p: &ModelPoint) -> Result<()> {
    let scale = 1.0 + payload_norm(&p.payload);
    let report = contains(&p.model, &p.payload, INPUT_TOL * scale * scale)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Error::NotInModel(format!("{}: {}", p.model.id, report.failures().join(", "))))
    }
}

fn check_tangent(v: &TangentVector) -> Result<()> {
    if v.at.model.id.family.is_compact() {
        return Err(Error::Unsupported("tangent vectors of compact models".into()));
    }
    check_point(&v.at)?;
    let scale = (1.0 + payload_norm(&v.at.payload)) * (1.0 + v.payload.norm());
    let report = tangent_contains(&v.at, &v.payload, INPUT_TOL * scale)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Error::NotTangent(format!("{}: {}", v.at.model.id, report.failures().join(", "))))
    }
}

/// Converts a point to another model of the same family.
pub fn convert(p: &ModelPoint, to: ModelId) -> Result<ModelPoint> {
    check_point(p)?;
    let path = route(p.model.id, to)?;
    let mut cur = ModelPoint { model: p.model, payload: normalize_payload(&p.model, &p.payload)? };
    for next in path.into_iter().skip(1) {
        cur = convert_step(&cur, next)?;
    }
    Ok(cur)
}

/// Pushes a tangent vector forward along [`convert`].
pub fn differential(v: &TangentVector, to: ModelId) -> Result<TangentVector> {
    check_tangent(v)?;
    let path = route(v.at.model.id, to)?;
    let model = v.at.model;
    let at = ModelPoint { model, payload: normalize_payload(&model, &v.at.payload)? };
    let mut cur = TangentVector { at, payload: normalize_tangent(&model, &v.payload)? };
    for next in path.into_iter().skip(1) {
        cur = differential_step(&cur, next)?;
    }
    Ok(cur)
}

fn non_transverse(what: &str) -> impl Fn(Error) -> Error + '_ {
    move |_| Error::NonTransverse(what.to_string())
}

/// `x₁x₂⁻¹`.
fn chart_of_line(x: &Pair) -> Result<AlgebraElement> {
    let inv = x.second.inv().map_err(non_transverse("second coordinate of the line is singular"))?;
    Ok(&x.first * &inv)
}

/// `(w₁ − z·w₂)x₂⁻¹`, the derivative of [`chart_of_line`].
fn chart_of_line_derivative(x: &Pair, w: &Pair, z: &AlgebraElement) -> Result<AlgebraElement> {
    let inv = x.second.inv().map_err(non_transverse("second coordinate of the line is singular"))?;
    Ok((&w.first - &(z * &w.second)) * inv)
}

/// The family's fixed matrix `C` over the precompact point algebra, and
/// its inverse.
fn conjugator(b_model: &Model) -> Result<(AlgebraElement, AlgebraElement)> {
    let spec = b_model.point_spec();
    let c = b_model.id.family.conjugator().matrix(&spec)?;
    let inv = c.inv()?;
    Ok((c, inv))
}

fn precompact(model: &Model) -> Result<Model> {
    model.with_kind(ModelKind::B, 1)
}

/// `C⁻¹x`, with `x` lifted to the precompact point algebra.
fn rotate_line(b_model: &Model, x: &Pair) -> Result<Pair> {
    let (_, inv) = conjugator(b_model)?;
    Ok(Pair::apply(&inv, &x.lift(&b_model.point_spec())?))
}

/// A generator of `y·B ∩ target²`, where `B` is the algebra of `y`, as a
/// pair over `target`.
fn descend_line(y: &Pair, target: &AlgebraSpec) -> Result<Pair> {
    let spec = *y.spec();
    if spec.tower == target.tower {
        return Ok(Pair::new(y.first.clone().retag(*target), y.second.clone().retag(*target)));
    }
    let outside = |v: &AlgebraElement| -> Result<AlgebraElement> { Ok(v - &v.restrict(target)?.lift(&spec)?) };
    let dim = spec.dim();
    let elem = |c: &[f64]| AlgebraElement::from_coefficients(spec, c.to_vec()).expect("dimension matches");
    let map = linear_map_matrix(dim, |c| {
        let v = y.right_mul(&elem(c));
        let r = v.try_map(outside).expect("towers nest");
        [r.first.coefficients(), r.second.coefficients()].concat()
    });
    let basis: Vec<Pair> = svd(&map)?
        .kernel(1e-8)
        .iter()
        .map(|v| y.right_mul(&elem(v.as_slice())).try_map(|a| a.restrict(target)))
        .collect::<Result<_>>()?;
    if basis.len() != target.dim() {
        return Err(Error::KernelRankMismatch { expected: target.dim(), found: basis.len() });
    }
    eigen::generator(&basis)
}

fn convert_step(p: &ModelPoint, to: ModelId) -> Result<ModelPoint> {
    let target = Model::new(to, p.model.over)?;
    let family = to.family;
    let payload = match (&p.payload, to.kind) {
        (Payload::C { .. }, ModelKind::P) => Payload::P(eigenline(p, to.sign)?),
        (Payload::P(x), ModelKind::C) => {
            Payload::C { j: operator_from_line(&p.model, x)?, anti_linear: family == Family::Sp2c }
        }
        (Payload::P(x), ModelKind::U) => Payload::U(chart_of_line(x)?),
        (Payload::U(z), ModelKind::P) => Payload::P(Pair::new(z.clone(), AlgebraElement::identity(*z.spec()))),
        (Payload::P(x), ModelKind::B) => Payload::B(chart_of_line(&rotate_line(&target, x)?)?),
        (Payload::B(z), ModelKind::P) => {
            let (c, _) = conjugator(&p.model)?;
            let y = Pair::apply(&c, &Pair::new(z.clone(), AlgebraElement::identity(*z.spec())));
            Payload::P(descend_line(&y, &target.point_spec())?)
        }
        (Payload::U(z), ModelKind::B) => {
            let (_, inv) = conjugator(&target)?;
            Payload::B(moebius(&inv, z).map_err(non_transverse("half-space point outside the disk chart"))?)
        }
        (Payload::B(z), ModelKind::U) => {
            let (c, _) = conjugator(&p.model)?;
            Payload::U(moebius(&c, z).map_err(non_transverse("disk point outside the half-space chart"))?)
        }
        _ => return Err(Error::Unsupported(format!("no primitive map {} -> {}", p.model.id, to))),
    };
    Ok(ModelPoint { model: target, payload })
}

fn differential_step(v: &TangentVector, to: ModelId) -> Result<TangentVector> {
    let p = &v.at;
    let q = convert_step(p, to)?;
    let family = to.family;
    let payload = match (&p.payload, &v.payload, &q.payload) {
        (Payload::C { .. }, TangentPayload::C(l), Payload::P(x)) => {
            let mu = eigen::structure_unit(family, x.spec());
            TangentPayload::P(apply_operator(family, l, x)?.right_mul(&mu).scale(0.5 * to.sign_f64()))
        }
        (Payload::P(x), TangentPayload::P(w), Payload::C { .. }) => {
            TangentPayload::C(operator_from_line_derivative(&p.model, x, w)?)
        }
        (Payload::P(x), TangentPayload::P(w), Payload::U(z)) => {
            TangentPayload::Chart(chart_of_line_derivative(x, w, z)?)
        }
        (Payload::U(_), TangentPayload::Chart(w), Payload::P(_)) => {
            TangentPayload::P(Pair::new(w.clone(), AlgebraElement::zeros(*w.spec())))
        }
        (Payload::P(x), TangentPayload::P(w), Payload::B(z)) => {
            let b = precompact(&p.model)?;
            TangentPayload::Chart(chart_of_line_derivative(&rotate_line(&b, x)?, &rotate_line(&b, w)?, z)?)
        }
        (Payload::B(_), TangentPayload::Chart(w), Payload::P(_)) => {
            let (c, _) = conjugator(&p.model)?;
            TangentPayload::P(Pair::apply(&c, &Pair::new(w.clone(), AlgebraElement::zeros(*w.spec()))))
        }
        (Payload::U(z), TangentPayload::Chart(w), Payload::B(_)) => {
            let (_, inv) = conjugator(&q.model)?;
            TangentPayload::Chart(moebius_derivative(&inv, z, w)?)
        }
        (Payload::B(z), TangentPayload::Chart(w), Payload::U(_)) => {
            let (c, _) = conjugator(&p.model)?;
            TangentPayload::Chart(moebius_derivative(&c, z, w)?)
        }
        _ => return Err(Error::Unsupported(format!("no differential of {} -> {}", p.model.id, to))),
    };
    Ok(TangentVector { at: q, payload })
}

/// Distance between two tangent vectors at the same point. Projective
/// tangents are classes `[x, w]` modulo `x·A`; the representatives are
/// aligned to a common base representative before the quotient residual
/// is taken.
pub fn tangent_residual(a: &TangentVector, b: &TangentVector) -> Result<f64> {
    if a.at.model != b.at.model {
        return Err(Error::SpecMismatch(format!("tangents at {} and {}", a.at.model.id, b.at.model.id)));
    }
    Ok(match (&a.at.payload, &a.payload, &b.at.payload, &b.payload) {
        (Payload::P(x), TangentPayload::P(w), Payload::P(y), TangentPayload::P(u)) => {
            let (alpha, _) = solve_right(x, y)?;
            let d = u.sub(&w.right_mul(&alpha));
            let (beta, _) = solve_right(y, &d)?;
            d.sub(&y.right_mul(&beta)).norm()
        }
        (_, TangentPayload::C(l), _, TangentPayload::C(m))
        | (_, TangentPayload::Chart(l), _, TangentPayload::Chart(m)) => l.distance(m),
        _ => return Err(Error::ShapeMismatch("tangent payloads of different models".into())),
    })
}

/// The size of a tangent vector as used for relative comparisons: the
/// quotient norm `min ‖w − x·a‖` for projective tangents.
pub fn tangent_size(v: &TangentVector) -> Result<f64> {
    Ok(match (&v.at.payload, &v.payload) {
        (Payload::P(x), TangentPayload::P(w)) => {
            let (a, _) = solve_right(x, w)?;
            w.sub(&x.right_mul(&a)).norm()
        }
        (_, p) => p.norm(),
    })
}

/// The `h`-orthogonal complement of a projective point, a point of the
/// projective model of the opposite sign: the other eigenline of the
/// corresponding operator.
pub fn orthogonal_line(p: &ModelPoint) -> Result<ModelPoint> {
    let id = p.model.id;
    if id.kind != ModelKind::P || id.family.is_compact() {
        return Err(Error::Unsupported(format!("orthogonal line on {id}")));
    }
    let op = convert(p, ModelId::new(id.family, ModelKind::C, 1)?)?;
    convert(&op, ModelId::new(id.family, ModelKind::P, -id.sign)?)
}
