//! The four models (operator, projective, half-space, precompact) of the
//! symmetric spaces, their points and tangent vectors, group actions and
//! the invariant metric.

mod action;
mod forms;
pub(crate) mod membership;
mod metric;

use std::fmt;

use rand::Rng;

use crate::algebra::{
    rng_from_seed, AlgebraElement, AlgebraSpec, AntiInvolution, Extension, ExtensionSigma, Pair, Unit,
};
use crate::algebra::{sample, Constraint};
use crate::error::{Error, Result};
use crate::groups::{random_compact_lie, random_lie, sample_group, Conjugator, GroupElement, GroupFamily, GroupId};

pub use action::{act, act_tangent, infinitesimal_action, moebius, moebius_derivative};
pub use forms::{eval_form, FormKind, SesquilinearForm};
pub use membership::{contains, line_equal, tangent_contains};
pub use metric::{metric, metric_at_base, metric_quadratic, metric_y};

/// The families of symmetric spaces with explicit models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `O₍₁,₁₎(A, σ)`.
    O11,
    /// `A^×`, realized inside `O₍₁,₁₎(A, σ)`.
    Ax,
    /// `O(A_ℂ, σ_ℂ)`, realized inside `O₍₁,₁₎(A, σ)`.
    Oc,
    /// `Sp₂(A, σ)`.
    Sp2,
    /// `Sp₂(A_ℂ, σ_ℂ)`.
    Sp2c,
    /// Compact `KO₍₁,₁₎(A, σ)`.
    CptKO11,
    /// Compact `KSp₂(A, σ)`.
    CptKSp2,
    /// Compact `KSp₂ᶜ(A_ℂ, σ_ℂ)`.
    CptKSp2c,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::O11,
        Family::Ax,
        Family::Oc,
        Family::Sp2,
        Family::Sp2c,
        Family::CptKO11,
        Family::CptKSp2,
        Family::CptKSp2c,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::O11 => "O11",
            Family::Ax => "AX",
            Family::Oc => "OC",
            Family::Sp2 => "SP2",
            Family::Sp2c => "SP2C",
            Family::CptKO11 => "CPT_KO11",
            Family::CptKSp2 => "CPT_KSP2",
            Family::CptKSp2c => "CPT_KSP2C",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }

    pub fn is_compact(self) -> bool {
        matches!(self, Family::CptKO11 | Family::CptKSp2 | Family::CptKSp2c)
    }

    /// Whether the family lives inside `O₍₁,₁₎(A, σ)`.
    pub fn is_orthogonal_type(self) -> bool {
        matches!(self, Family::O11 | Family::Ax | Family::Oc | Family::CptKO11)
    }

    pub fn supports(self, kind: ModelKind) -> bool {
        !self.is_compact() || matches!(kind, ModelKind::P | ModelKind::B)
    }

    /// The matrix conjugating the projective chart into the precompact one.
    pub fn conjugator(self) -> Conjugator {
        match self {
            Family::Sp2 | Family::CptKSp2 => Conjugator::T,
            Family::Sp2c | Family::CptKSp2c => Conjugator::Q,
            _ => Conjugator::R,
        }
    }

    /// The imaginary unit of the half-space chart, if any.
    pub fn chart_unit(self) -> Option<Unit> {
        match self {
            Family::Sp2 | Family::CptKSp2 => Some(Unit::I),
            Family::Sp2c | Family::CptKSp2c => Some(Unit::J),
            _ => None,
        }
    }

    /// Extension sign pattern of the Hermitian involution on the chart
    /// algebra (the one defining the cones of the half-space and precompact
    /// models, and the metric).
    pub fn hermitian_ext(self) -> ExtensionSigma {
        match self {
            Family::Sp2 | Family::CptKSp2 => ExtensionSigma::Conjugate,
            Family::Sp2c | Family::CptKSp2c => ExtensionSigma::Sigma1,
            _ => ExtensionSigma::Trivial,
        }
    }
}

/// The four models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Operators `J` (involutive, complex or quaternionic structures).
    C,
    /// Lines in `A²` (or its complexification / quaternionification).
    P,
    /// Half-space chart.
    U,
    /// Precompact chart.
    B,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::C, ModelKind::P, ModelKind::U, ModelKind::B];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::C => "C",
            ModelKind::P => "P",
            ModelKind::U => "U",
            ModelKind::B => "B",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ModelKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(name))
    }

    /// Whether the model comes in a `±` pair.
    pub fn is_signed(self) -> bool {
        matches!(self, ModelKind::P | ModelKind::U)
    }
}

/// Family, model kind and sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModelId {
    pub family: Family,
    pub kind: ModelKind,
    pub sign: i8,
}

impl ModelId {
    /// Validates the combination; the sign is normalized to `+1` for the
    /// unsigned kinds and for the compact families.
    pub fn new(family: Family, kind: ModelKind, sign: i8) -> Result<Self> {
        if !family.supports(kind) {
            return Err(Error::Unsupported(format!("{} has no {} model", family.name(), kind.name())));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Unsupported(format!("sign must be +1 or -1, got {sign}")));
        }
        let sign = if kind.is_signed() && !family.is_compact() { sign } else { 1 };
        Ok(ModelId { family, kind, sign })
    }

    pub fn sign_f64(&self) -> f64 {
        f64::from(self.sign)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.family.name(), self.kind.name())?;
        if self.kind.is_signed() && !self.family.is_compact() {
            write!(f, "{}", if self.sign > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// A model over a concrete Hermitian algebra `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Model {
    pub id: ModelId,
    /// The base algebra `A`, without extension units.
    pub over: AlgebraSpec,
}

impl Model {
    pub fn new(id: ModelId, over: AlgebraSpec) -> Result<Self> {
        if over.tower.extension != Extension::None || over.tower.central {
            return Err(Error::UnsupportedSpec(format!("models are built over a plain algebra, got {over}")));
        }
        if !over.is_hermitian() {
            return Err(Error::NotHermitianPair(over.to_string()));
        }
        Ok(Model { id, over })
    }

    /// Convenience constructor from the parts of a [`ModelId`].
    pub fn of(family: Family, kind: ModelKind, sign: i8, over: AlgebraSpec) -> Result<Self> {
        Model::new(ModelId::new(family, kind, sign)?, over)
    }

    /// The same family and algebra with another model kind and sign.
    pub fn with_kind(&self, kind: ModelKind, sign: i8) -> Result<Self> {
        Model::of(self.id.family, kind, sign, self.over)
    }

    pub fn family(&self) -> Family {
        self.id.family
    }

    /// `A_ℂ` with the linear extension `σ_ℂ`.
    pub fn complexified(&self) -> AlgebraSpec {
        self.over.complexify(ExtensionSigma::Linear)
    }

    /// `A_ℍ` with `σ₀`.
    pub fn quaternionified(&self) -> AlgebraSpec {
        self.over.quaternionify(ExtensionSigma::Sigma0)
    }

    /// The algebra in which the payload entries live.
    pub fn point_spec(&self) -> AlgebraSpec {
        use Family::*;
        use ModelKind::*;
        match (self.id.family, self.id.kind) {
            (O11 | Ax | Oc | CptKO11, _) => self.over,
            (Sp2, C) | (CptKSp2, P) => self.over,
            (Sp2, _) | (CptKSp2, _) => self.complexified(),
            (Sp2c, C) | (CptKSp2c, P) => self.complexified(),
            (Sp2c, _) | (CptKSp2c, _) => self.quaternionified(),
        }
    }

    /// The acting group.
    pub fn group(&self) -> GroupId {
        let (family, over) = match self.id.family {
            Family::O11 => (GroupFamily::O11, self.over),
            Family::Ax => (GroupFamily::AxHat, self.over),
            Family::Oc => (GroupFamily::OcHat, self.over),
            Family::Sp2 => (GroupFamily::Sp2, self.over),
            Family::Sp2c => (GroupFamily::Sp2, self.complexified()),
            Family::CptKO11 => (GroupFamily::KO11, self.over),
            Family::CptKSp2 => (GroupFamily::KSp2, self.over),
            Family::CptKSp2c => (GroupFamily::KSp2C, self.complexified()),
        };
        GroupId::new(family, over).expect("model groups are valid over Hermitian algebras")
    }

    /// The Hermitian involution on the point algebra.
    pub fn hermitian_sigma(&self) -> AntiInvolution {
        let spec = self.point_spec();
        match spec.tower.extension {
            Extension::None => spec.sigma,
            _ => AntiInvolution { ext: self.id.family.hermitian_ext(), ..spec.sigma },
        }
    }

    /// `u` scaled by `x`, where `u` is the chart unit (`1`, `i` or `j`).
    fn unit_scalar(&self, x: f64) -> AlgebraElement {
        let spec = self.point_spec();
        match self.id.family.chart_unit() {
            Some(u) => AlgebraElement::unit(spec, u, x).expect("point algebra carries the chart unit"),
            None => AlgebraElement::scalar(spec, x),
        }
    }

    /// The base point of the model.
    pub fn basepoint(&self) -> ModelPoint {
        let spec = self.point_spec();
        let s = self.id.sign_f64();
        let payload = match self.id.kind {
            ModelKind::C => {
                let zero = AlgebraElement::zeros(spec);
                let one = AlgebraElement::identity(spec);
                let lower = if self.id.family.is_orthogonal_type() { one.clone() } else { -&one };
                Payload::C {
                    j: AlgebraElement::from_blocks(&zero, &one, &lower, &zero).expect("square blocks"),
                    anti_linear: self.id.family == Family::Sp2c,
                }
            }
            ModelKind::P if self.id.family.is_compact() => Payload::P(Pair::e1(spec)),
            ModelKind::P => Payload::P(Pair::new(self.unit_scalar(s), AlgebraElement::identity(spec))),
            ModelKind::U => Payload::U(self.unit_scalar(s)),
            ModelKind::B if self.id.family.is_compact() => Payload::B(self.unit_scalar(1.0)),
            ModelKind::B => Payload::B(AlgebraElement::zeros(spec)),
        };
        ModelPoint { model: *self, payload }
    }

    /// Checked point constructor.
    pub fn point(&self, payload: Payload, tol: f64) -> Result<ModelPoint> {
        let report = contains(self, &payload, tol)?;
        if !report.passed() {
            return Err(Error::NotInModel(format!("{}: {}", self.id, report.failures().join(", "))));
        }
        Ok(ModelPoint { model: *self, payload })
    }

    /// A random point, obtained by moving the base point with a random
    /// group element.
    pub fn sample_point(&self, rng: &mut impl Rng) -> Result<ModelPoint> {
        let g = sample_group(&self.group(), rng)?;
        act(&g, &self.basepoint())
    }

    pub fn sample_point_seeded(&self, seed: u64) -> Result<ModelPoint> {
        self.sample_point(&mut rng_from_seed(seed))
    }

    /// A random element of the group fixing the base point: the exponential
    /// of a compact Lie algebra element for the non-compact families, and
    /// `diag(a, a)` with `a ∈ O(A, σ)` (or `diag(a, ā)` with
    /// `a ∈ O(A_ℂ, σ̄_ℂ)`) for the compact ones.
    pub fn sample_stabilizer(&self, rng: &mut impl Rng) -> Result<GroupElement> {
        let gid = self.group();
        if !self.id.family.is_compact() {
            return Ok(GroupElement::new_unchecked(gid, random_compact_lie(&gid, 1.0, rng)?.exp()));
        }
        let spec = gid.over;
        let xi = sample(spec, Constraint::Free, rng);
        let (a, b) = if self.id.family == Family::CptKSp2c {
            let xi = xi.symmetry_part(&spec.with_ext_sigma(ExtensionSigma::Conjugate).sigma, -1.0);
            let bar = xi.theta(Unit::I)?;
            (xi, bar)
        } else {
            let xi = xi.symmetry_part(&spec.sigma, -1.0);
            (xi.clone(), xi)
        };
        let zero = AlgebraElement::zeros(spec);
        let k = AlgebraElement::from_blocks(&a, &zero, &zero, &b)?.exp();
        Ok(GroupElement::new_unchecked(gid, k))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.id, self.over)
    }
}

/// Point data of the four models.
#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    /// A `2n × 2n` matrix; for anti-linear structures the operator is
    /// `x ↦ J·θ_i(x)`.
    C {
        j: AlgebraElement,
        anti_linear: bool,
    },
    /// A regular representative of the line `xA`.
    P(Pair),
    U(AlgebraElement),
    B(AlgebraElement),
}

impl Payload {
    pub fn kind(&self) -> ModelKind {
        match self {
            Payload::C { .. } => ModelKind::C,
            Payload::P(_) => ModelKind::P,
            Payload::U(_) => ModelKind::U,
            Payload::B(_) => ModelKind::B,
        }
    }

    /// The chart coordinate of a `U` or `B` point.
    pub fn chart(&self) -> Option<&AlgebraElement> {
        match self {
            Payload::U(z) | Payload::B(z) => Some(z),
            _ => None,
        }
    }
}

/// A point of a model.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelPoint {
    pub model: Model,
    pub payload: Payload,
}

impl ModelPoint {
    pub fn id(&self) -> ModelId {
        self.model.id
    }

    pub fn operator(&self) -> Option<&AlgebraElement> {
        match &self.payload {
            Payload::C { j, .. } => Some(j),
            _ => None,
        }
    }

    pub fn line(&self) -> Option<&Pair> {
        match &self.payload {
            Payload::P(x) => Some(x),
            _ => None,
        }
    }

    pub fn chart(&self) -> Option<&AlgebraElement> {
        self.payload.chart()
    }

    /// Whether two points of the same model coincide (lines compared up to
    /// the right action of `A^×`).
    pub fn approx_eq(&self, other: &ModelPoint, tol: f64) -> Result<bool> {
        if self.model != other.model {
            return Ok(false);
        }
        Ok(match (&self.payload, &other.payload) {
            (Payload::P(x), Payload::P(y)) => line_equal(x, y, tol)?,
            (Payload::C { j: a, .. }, Payload::C { j: b, .. }) => a.distance(b) <= tol * (1.0 + b.norm()),
            (Payload::U(a), Payload::U(b)) | (Payload::B(a), Payload::B(b)) => a.distance(b) <= tol * (1.0 + b.norm()),
            _ => false,
        })
    }

    /// A random tangent vector at this point, the infinitesimal action of a
    /// random Lie algebra element.
    pub fn sample_tangent(&self, rng: &mut impl Rng) -> Result<TangentVector> {
        if self.model.id.family.is_compact() {
            return Err(Error::Unsupported("tangent vectors of compact models".into()));
        }
        let xi = random_lie(&self.model.group(), 1.0, rng)?;
        infinitesimal_action(&xi, self)
    }

    pub fn sample_tangent_seeded(&self, seed: u64) -> Result<TangentVector> {
        self.sample_tangent(&mut rng_from_seed(seed))
    }
}

/// Tangent data of the four models.
#[derive(Clone, Debug, PartialEq)]
pub enum TangentPayload {
    /// `L` with the same linearity as the base point's operator.
    C(AlgebraElement),
    /// A representative `w` of the class `[x, w]`, defined up to `x·A`.
    P(Pair),
    /// A vector in the chart algebra (`U` and `B` models).
    Chart(AlgebraElement),
}

impl TangentPayload {
    pub fn norm(&self) -> f64 {
        match self {
            TangentPayload::C(l) | TangentPayload::Chart(l) => l.norm(),
            TangentPayload::P(w) => w.norm(),
        }
    }

    pub fn scale(&self, x: f64) -> TangentPayload {
        match self {
            TangentPayload::C(l) => TangentPayload::C(l.scale(x)),
            TangentPayload::P(w) => TangentPayload::P(w.scale(x)),
            TangentPayload::Chart(v) => TangentPayload::Chart(v.scale(x)),
        }
    }

    /// Sum of two payloads of the same shape.
    pub fn add(&self, other: &TangentPayload) -> Result<TangentPayload> {
        Ok(match (self, other) {
            (TangentPayload::C(a), TangentPayload::C(b)) => TangentPayload::C(a.checked_add(b)?),
            (TangentPayload::P(a), TangentPayload::P(b)) => TangentPayload::P(a.add(b)),
            (TangentPayload::Chart(a), TangentPayload::Chart(b)) => TangentPayload::Chart(a.checked_add(b)?),
            _ => return Err(Error::ShapeMismatch("tangent payloads of different models".into())),
        })
    }

    pub fn element(&self) -> Option<&AlgebraElement> {
        match self {
            TangentPayload::C(l) | TangentPayload::Chart(l) => Some(l),
            TangentPayload::P(_) => None,
        }
    }
}

/// A tangent vector at a model point.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    pub at: ModelPoint,
    pub payload: TangentPayload,
}

impl TangentVector {
    /// Checked constructor.
    pub fn new(at: ModelPoint, payload: TangentPayload, tol: f64) -> Result<Self> {
        let report = tangent_contains(&at, &payload, tol)?;
        if !report.passed() {
            return Err(Error::NotTangent(format!("{}: {}", at.id(), report.failures().join(", "))));
        }
        Ok(TangentVector { at, payload })
    }

    pub fn zero(at: ModelPoint) -> Self {
        let payload = match &at.payload {
            Payload::C { j, .. } => TangentPayload::C(AlgebraElement::zeros(*j.spec())),
            Payload::P(x) => TangentPayload::P(x.scale(0.0)),
            Payload::U(z) | Payload::B(z) => TangentPayload::Chart(AlgebraElement::zeros(*z.spec())),
        };
        TangentVector { at, payload }
    }
}

fn retag_checked(x: &AlgebraElement, want: AlgebraSpec) -> Result<AlgebraElement> {
    if x.spec().same_algebra(&want) {
        Ok(x.clone().retag(want))
    } else {
        Err(Error::SpecMismatch(format!("payload over {}, expected {}", x.spec(), want)))
    }
}

/// Checks that the payload matches the model and tags its entries with the
/// model's involution.
pub(crate) fn normalize_payload(model: &Model, payload: &Payload) -> Result<Payload> {
    let spec = model.point_spec();
    let wide = spec.with_n(2 * spec.n);
    if payload.kind() != model.id.kind {
        return Err(Error::SpecMismatch(format!("{} payload for {}", payload.kind().name(), model.id)));
    }
    Ok(match payload {
        Payload::C { j, anti_linear } => Payload::C { j: retag_checked(j, wide)?, anti_linear: *anti_linear },
        Payload::P(x) => Payload::P(Pair::new(retag_checked(&x.first, spec)?, retag_checked(&x.second, spec)?)),
        Payload::U(z) => Payload::U(retag_checked(z, spec)?),
        Payload::B(z) => Payload::B(retag_checked(z, spec)?),
    })
}

/// Tangent counterpart of [`normalize_payload`].
pub(crate) fn normalize_tangent(model: &Model, v: &TangentPayload) -> Result<TangentPayload> {
    let spec = model.point_spec();
    Ok(match (model.id.kind, v) {
        (ModelKind::C, TangentPayload::C(l)) => TangentPayload::C(retag_checked(l, spec.with_n(2 * spec.n))?),
        (ModelKind::P, TangentPayload::P(w)) => {
            TangentPayload::P(Pair::new(retag_checked(&w.first, spec)?, retag_checked(&w.second, spec)?))
        }
        (ModelKind::U | ModelKind::B, TangentPayload::Chart(w)) => TangentPayload::Chart(retag_checked(w, spec)?),
        _ => return Err(Error::SpecMismatch(format!("tangent payload does not match {}", model.id))),
    })
}

/// Splits `z = x + y·i` in `A_ℂ` into `(x, y)` over `A`.
pub fn complex_parts(z: &AlgebraElement) -> (AlgebraElement, AlgebraElement) {
    (z.ext_part(0), z.ext_part(1))
}

/// Splits `z = x + y·j` in `A_ℍ` into `(x, y)` over `A_ℂ`.
pub fn quaternion_parts(z: &AlgebraElement) -> (AlgebraElement, AlgebraElement) {
    let c = z.spec().strip_extension().complexify(ExtensionSigma::Linear);
    let x = AlgebraElement::from_ext_parts(c, &[z.ext_part(0), z.ext_part(1)]).expect("parts match");
    let y = AlgebraElement::from_ext_parts(c, &[z.ext_part(2), z.ext_part(3)]).expect("parts match");
    (x, y)
}

/// The imaginary part used by the half-space cone: `(z + σ(z))/2` for the
/// orthogonal families, `Im z` for `Sp₂(A, σ)`, and the `j`-coefficient
/// `Im_ℂ z` for `Sp₂(A_ℂ, σ_ℂ)`.
pub fn imaginary_part(family: Family, z: &AlgebraElement) -> AlgebraElement {
    match family.chart_unit() {
        None => (z + &z.sigma()).scale(0.5),
        Some(Unit::I) => complex_parts(z).1,
        Some(_) => {
            let y = quaternion_parts(z).1;
            let spec = y.spec().with_ext_sigma(ExtensionSigma::Conjugate);
            y.retag(spec)
        }
    }
}
