//! Group and Lie-algebra membership, Cartan projections, fixed conjugators,
//! exponentials and deterministic sampling of group elements.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use rand::Rng;

use crate::algebra::sample::{random_element, random_invertible};
use crate::algebra::{AlgebraElement, AlgebraSpec, Constraint, Extension, ExtensionSigma, Unit};
use crate::error::{Error, Result};

/// The group families that elements can be tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    /// `Sp₂(A, σ)`, preserving the standard symplectic form.
    Sp2,
    /// `O₍₁,₁₎(A, σ)`, preserving the standard indefinite form.
    O11,
    /// `O(A, σ)`: `1 × 1` matrices with `σ(a)a = 1`.
    OAlg,
    /// `A^×` embedded as `diag(g, σ(g)⁻¹)`.
    AxHat,
    /// `O(A_ℂ, σ_ℂ)` embedded as `[[g₀, g₁], [−g₁, g₀]]` for `g = g₀ + g₁i`.
    OcHat,
    /// `KSp₂(A, σ) = O₂(A, σ) ∩ Sp₂(A, σ)`.
    KSp2,
    /// `KO₍₁,₁₎(A, σ) = O₂(A, σ) ∩ O₍₁,₁₎(A, σ)`.
    KO11,
    /// `O₂(A_ℂ, σ̄_ℂ) ∩ Sp₂(A_ℂ, σ_ℂ)`, over a complexified algebra.
    KSp2C,
    /// `O₂(A, σ)`: `σ(g)ᵗg = Id`.
    O2,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 9] = [
        GroupFamily::Sp2,
        GroupFamily::O11,
        GroupFamily::OAlg,
        GroupFamily::AxHat,
        GroupFamily::OcHat,
        GroupFamily::KSp2,
        GroupFamily::KO11,
        GroupFamily::KSp2C,
        GroupFamily::O2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupFamily::Sp2 => "SP2",
            GroupFamily::O11 => "O11",
            GroupFamily::OAlg => "O_ALG",
            GroupFamily::AxHat => "AX_HAT",
            GroupFamily::OcHat => "OC_HAT",
            GroupFamily::KSp2 => "KSP2",
            GroupFamily::KO11 => "KO11",
            GroupFamily::KSp2C => "KSP2C",
            GroupFamily::O2 => "O2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        GroupFamily::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }
}

/// A group family over a concrete algebra `A = over`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupId {
    pub family: GroupFamily,
    pub over: AlgebraSpec,
}

impl GroupId {
    /// Validates the family/algebra combination.
    pub fn new(family: GroupFamily, over: AlgebraSpec) -> Result<Self> {
        match family {
            GroupFamily::KSp2C => {
                if over.tower.extension != Extension::Complex || over.sigma.ext != ExtensionSigma::Linear {
                    return Err(Error::UnsupportedSpec(format!(
                        "KSP2C needs a complexified algebra with the linear extension, got {over}"
                    )));
                }
                if !over.with_ext_sigma(ExtensionSigma::Conjugate).is_hermitian() {
                    return Err(Error::NotHermitianPair(over.to_string()));
                }
            }
            GroupFamily::KSp2 | GroupFamily::KO11 | GroupFamily::O2 | GroupFamily::OAlg if !over.is_hermitian() => {
                return Err(Error::NotHermitianPair(over.to_string()));
            }
            _ => {}
        }
        Ok(GroupId { family, over })
    }

    /// The algebra in which the group's matrices live: `Mat_2(A)`, or `A`
    /// itself for `O(A, σ)`.
    pub fn matrix_spec(&self) -> AlgebraSpec {
        match self.family {
            GroupFamily::OAlg => self.over,
            _ => self.over.with_n(2 * self.over.n),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { gid: *self, m: AlgebraElement::identity(self.matrix_spec()) }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.family.name(), self.over)
    }
}

/// Named residuals of the defining conditions of a set.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub residuals: Vec<(String, f64)>,
    pub tol: f64,
}

impl MembershipReport {
    pub fn new(tol: f64) -> Self {
        MembershipReport { residuals: Vec::new(), tol }
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64) {
        self.residuals.push((name.into(), residual));
    }

    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| *r <= self.tol)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    /// Names of the conditions that failed.
    pub fn failures(&self) -> Vec<&str> {
        self.residuals.iter().filter(|(_, r)| *r > self.tol).map(|(n, _)| n.as_str()).collect()
    }

    pub fn merge(&mut self, other: MembershipReport) {
        self.residuals.extend(other.residuals);
    }
}

/// A `2 × 2` block matrix tagged with the group it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub gid: GroupId,
    pub m: AlgebraElement,
}

impl GroupElement {
    /// Wraps `m` after checking membership.
    pub fn new(gid: GroupId, m: AlgebraElement, tol: f64) -> Result<Self> {
        let report = group_contains(&gid, &m, tol)?;
        if !report.passed() {
            return Err(Error::NotInGroup(report.failures().join(", ")));
        }
        Ok(GroupElement { gid, m })
    }

    /// Wraps `m` without checking membership.
    pub fn new_unchecked(gid: GroupId, m: AlgebraElement) -> Self {
        GroupElement { gid, m }
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement { gid: self.gid, m: &self.m * &other.m }
    }

    pub fn inv(&self) -> Result<GroupElement> {
        Ok(GroupElement { gid: self.gid, m: self.m.inv()? })
    }
}

/// A Lie algebra element tagged with its group.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement {
    pub gid: GroupId,
    pub m: AlgebraElement,
}

fn check_matrix(gid: &GroupId, m: &AlgebraElement) -> Result<()> {
    let want = gid.matrix_spec();
    if m.spec().same_algebra(&want) {
        Ok(())
    } else {
        Err(Error::SpecMismatch(format!("{} is not a matrix over {}", m.spec(), want)))
    }
}

fn sym_residual(x: &AlgebraElement, sign: f64) -> f64 {
    let s = x.sigma();
    x.data_distance_scaled(&s, sign)
}

impl AlgebraElement {
    /// `‖x − sign·other‖`.
    fn data_distance_scaled(&self, other: &AlgebraElement, sign: f64) -> f64 {
        self.coefficients().iter().zip(other.coefficients()).map(|(a, b)| (a - sign * b).powi(2)).sum::<f64>().sqrt()
    }
}

/// Complex conjugation `θ_i` on a complexified algebra.
pub(crate) fn bar(x: &AlgebraElement) -> AlgebraElement {
    x.theta(Unit::I).expect("complexified algebra")
}

/// The `σ̄_ℂ` companion of the spec's own `σ_ℂ`.
pub(crate) fn sigma_bar(x: &AlgebraElement) -> AlgebraElement {
    let s = x.spec().sigma;
    x.apply_sigma(&crate::algebra::AntiInvolution { ext: ExtensionSigma::Conjugate, ..s })
}

fn sp2_residuals(report: &mut MembershipReport, blocks: &[AlgebraElement; 4]) {
    let [a, b, c, d] = blocks;
    report.push("sigma(a)c symmetric", sym_residual(&(a.sigma() * c), 1.0));
    report.push("sigma(b)d symmetric", sym_residual(&(b.sigma() * d), 1.0));
    report.push("sigma(a)d - sigma(c)b = 1", (a.sigma() * d - c.sigma() * b).add_scalar(-1.0).norm());
}

fn o11_residuals(report: &mut MembershipReport, blocks: &[AlgebraElement; 4]) {
    let [a, b, c, d] = blocks;
    report.push("sigma(a)c skew", sym_residual(&(a.sigma() * c), -1.0));
    report.push("sigma(b)d skew", sym_residual(&(b.sigma() * d), -1.0));
    report.push("sigma(a)d + sigma(c)b = 1", (a.sigma() * d + c.sigma() * b).add_scalar(-1.0).norm());
}

fn o2_residual(m: &AlgebraElement) -> f64 {
    (m.sigma() * m).add_scalar(-1.0).norm()
}

/// Evaluates the defining conditions of the group `gid` on `m`.
pub fn group_contains(gid: &GroupId, m: &AlgebraElement, tol: f64) -> Result<MembershipReport> {
    check_matrix(gid, m)?;
    let mut report = MembershipReport::new(tol);
    if gid.family == GroupFamily::OAlg {
        report.push("sigma(g)g = 1", o2_residual(m));
        return Ok(report);
    }
    let blocks = m.split_blocks();
    let [a, b, c, d] = &blocks;
    match gid.family {
        GroupFamily::Sp2 => sp2_residuals(&mut report, &blocks),
        GroupFamily::O11 => o11_residuals(&mut report, &blocks),
        GroupFamily::O2 => report.push("sigma(g)^t g = Id", o2_residual(m)),
        GroupFamily::KSp2 => {
            sp2_residuals(&mut report, &blocks);
            report.push("d = a", d.distance(a));
            report.push("c = -b", (c + b).norm());
            report.push("sigma(a)a + sigma(b)b = 1", (a.sigma() * a + b.sigma() * b).add_scalar(-1.0).norm());
            report.push("sigma(a)b symmetric", sym_residual(&(a.sigma() * b), 1.0));
        }
        GroupFamily::KO11 => {
            o11_residuals(&mut report, &blocks);
            report.push("d = a", d.distance(a));
            report.push("c = b", c.distance(b));
            report.push("sigma(a)a + sigma(b)b = 1", (a.sigma() * a + b.sigma() * b).add_scalar(-1.0).norm());
            report.push("sigma(a)b skew", sym_residual(&(a.sigma() * b), -1.0));
        }
        GroupFamily::KSp2C => {
            sp2_residuals(&mut report, &blocks);
            report.push("c = -conj(b)", (c + &bar(b)).norm());
            report.push("d = conj(a)", d.distance(&bar(a)));
            report.push(
                "sigmabar(a)a + sigma(b)conj(b) = 1",
                (sigma_bar(a) * a + b.sigma() * bar(b)).add_scalar(-1.0).norm(),
            );
            report.push("sigmabar(a)b - sigma(b)conj(a) = 0", (sigma_bar(a) * b - b.sigma() * bar(a)).norm());
        }
        GroupFamily::AxHat => {
            report.push("b = 0", b.norm());
            report.push("c = 0", c.norm());
            report.push("sigma(a)d = 1", (a.sigma() * d).add_scalar(-1.0).norm());
        }
        GroupFamily::OcHat => {
            o11_residuals(&mut report, &blocks);
            report.push("d = a", d.distance(a));
            report.push("c = -b", (c + b).norm());
        }
        GroupFamily::OAlg => unreachable!(),
    }
    Ok(report)
}

/// The row-form conditions `aσ̄(a) + bσ̄(b) = 1` and `bσ(a) − aσ(b) = 0`,
/// which are equivalent to the column form for members of `KSp₂ᶜ`.
pub fn ksp2c_row_residuals(m: &AlgebraElement) -> (f64, f64) {
    let [a, b, _, _] = m.split_blocks();
    let unit = (&a * &sigma_bar(&a) + &b * &sigma_bar(&b)).add_scalar(-1.0).norm();
    let cross = (&b * &a.sigma() - &a * &b.sigma()).norm();
    (unit, cross)
}

/// Evaluates the defining conditions of the Lie algebra of `gid` on `m`.
pub fn lie_contains(gid: &GroupId, m: &AlgebraElement, tol: f64) -> Result<MembershipReport> {
    check_matrix(gid, m)?;
    let mut report = MembershipReport::new(tol);
    if gid.family == GroupFamily::OAlg {
        report.push("sigma(x) = -x", sym_residual(m, -1.0));
        return Ok(report);
    }
    if gid.family == GroupFamily::O2 {
        report.push("sigma(x)^t = -x", sym_residual(m, -1.0));
        return Ok(report);
    }
    let [a, b, c, d] = m.split_blocks();
    let diag = |report: &mut MembershipReport| report.push("d = -sigma(a)", (&d + &a.sigma()).norm());
    match gid.family {
        GroupFamily::Sp2 => {
            diag(&mut report);
            report.push("z symmetric", sym_residual(&b, 1.0));
            report.push("y symmetric", sym_residual(&c, 1.0));
        }
        GroupFamily::O11 => {
            diag(&mut report);
            report.push("z skew", sym_residual(&b, -1.0));
            report.push("y skew", sym_residual(&c, -1.0));
        }
        GroupFamily::KSp2 => {
            report.push("d = a", d.distance(&a));
            report.push("c = -b", (&c + &b).norm());
            report.push("a skew", sym_residual(&a, -1.0));
            report.push("b symmetric", sym_residual(&b, 1.0));
        }
        GroupFamily::KO11 => {
            report.push("d = a", d.distance(&a));
            report.push("c = b", c.distance(&b));
            report.push("a skew", sym_residual(&a, -1.0));
            report.push("b skew", sym_residual(&b, -1.0));
        }
        GroupFamily::KSp2C => {
            report.push("d = conj(a)", d.distance(&bar(&a)));
            report.push("c = -conj(b)", (&c + &bar(&b)).norm());
            report.push("sigmabar(a) = -a", (&sigma_bar(&a) + &a).norm());
            report.push("b symmetric", sym_residual(&b, 1.0));
        }
        GroupFamily::AxHat => {
            diag(&mut report);
            report.push("b = 0", b.norm());
            report.push("c = 0", c.norm());
        }
        GroupFamily::OcHat => {
            diag(&mut report);
            report.push("z skew", sym_residual(&b, -1.0));
            report.push("d = a", d.distance(&a));
            report.push("c = -b", (&c + &b).norm());
        }
        GroupFamily::OAlg | GroupFamily::O2 => unreachable!(),
    }
    Ok(report)
}

impl LieElement {
    /// Wraps `m` after checking Lie algebra membership.
    pub fn new(gid: GroupId, m: AlgebraElement, tol: f64) -> Result<Self> {
        let report = lie_contains(&gid, &m, tol)?;
        if !report.passed() {
            return Err(Error::NotInLieAlgebra(report.failures().join(", ")));
        }
        Ok(LieElement { gid, m })
    }

    /// `exp(t·ξ)`.
    pub fn exp(&self, t: f64) -> GroupElement {
        GroupElement { gid: self.gid, m: self.m.scale(t).exp() }
    }
}

/// `exp(t·ξ)` for a matrix that is checked to lie in the Lie algebra.
pub fn exp_lie(gid: &GroupId, xi: &AlgebraElement, t: f64, tol: f64) -> Result<GroupElement> {
    Ok(LieElement::new(*gid, xi.clone(), tol)?.exp(t))
}

/// Which Cartan decomposition applies to a Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanKind {
    /// `𝔰𝔭₂(A, σ) = 𝔨𝔰𝔭₂ ⊕ 𝔪𝔰𝔭₂` for a Hermitian `(A, σ)`.
    Sp2,
    /// `𝔬₍₁,₁₎(A, σ) = 𝔨𝔬₍₁,₁₎ ⊕ 𝔪𝔬₍₁,₁₎` for a Hermitian `(A, σ)`.
    O11,
    /// `𝔰𝔭₂(A_ℂ, σ_ℂ) = 𝔨ᶜ ⊕ 𝔪ᶜ`.
    Sp2Complex,
}

impl CartanKind {
    /// The decomposition relevant for `gid`, if any.
    pub fn of(gid: &GroupId) -> Result<Self> {
        let complex = gid.over.tower.extension == Extension::Complex && gid.over.sigma.ext == ExtensionSigma::Linear;
        match gid.family {
            GroupFamily::Sp2 | GroupFamily::KSp2 if gid.over.is_hermitian() => Ok(CartanKind::Sp2),
            GroupFamily::Sp2 | GroupFamily::KSp2C if complex => Ok(CartanKind::Sp2Complex),
            GroupFamily::O11 | GroupFamily::KO11 if gid.over.is_hermitian() => Ok(CartanKind::O11),
            _ => Err(Error::Unsupported(format!("no Cartan decomposition for {gid}"))),
        }
    }
}

/// Splits `ξ` into its compact part `k` and its symmetric part `m`.
pub fn cartan_project(gid: &GroupId, xi: &AlgebraElement, tol: f64) -> Result<(AlgebraElement, AlgebraElement)> {
    let kind = CartanKind::of(gid)?;
    let ambient = GroupId { family: if kind == CartanKind::O11 { GroupFamily::O11 } else { GroupFamily::Sp2 }, ..*gid };
    let report = lie_contains(&ambient, xi, tol)?;
    if !report.passed() {
        return Err(Error::NotInLieAlgebra(report.failures().join(", ")));
    }
    let [x, z, y, _] = xi.split_blocks();
    let half = |a: AlgebraElement| a.scale(0.5);
    let (k, m) = match kind {
        CartanKind::Sp2 => {
            let ka = half(&x - &x.sigma());
            let kb = half(&z - &y);
            let ma = half(&x + &x.sigma());
            let mb = half(&z + &y);
            (AlgebraElement::from_blocks(&ka, &kb, &-&kb, &ka)?, AlgebraElement::from_blocks(&ma, &mb, &mb, &-&ma)?)
        }
        CartanKind::O11 => {
            let ka = half(&x - &x.sigma());
            let kb = half(&z + &y);
            let ma = half(&x + &x.sigma());
            let mb = half(&z - &y);
            (AlgebraElement::from_blocks(&ka, &kb, &kb, &ka)?, AlgebraElement::from_blocks(&ma, &mb, &-&mb, &-&ma)?)
        }
        CartanKind::Sp2Complex => {
            let ka = half(&x - &sigma_bar(&x));
            let kb = half(&z - &bar(&y));
            let ma = half(&x + &sigma_bar(&x));
            let mb = half(&z + &bar(&y));
            (
                AlgebraElement::from_blocks(&ka, &kb, &-&bar(&kb), &bar(&ka))?,
                AlgebraElement::from_blocks(&ma, &mb, &bar(&mb), &-&bar(&ma))?,
            )
        }
    };
    Ok((k, m))
}

/// Residual of the compact-part pattern of `kind`.
pub fn k_pattern_residual(kind: CartanKind, k: &AlgebraElement) -> f64 {
    let [a, b, c, d] = k.split_blocks();
    match kind {
        CartanKind::Sp2 => d.distance(&a) + (&c + &b).norm() + sym_residual(&a, -1.0) + sym_residual(&b, 1.0),
        CartanKind::O11 => d.distance(&a) + c.distance(&b) + sym_residual(&a, -1.0) + sym_residual(&b, -1.0),
        CartanKind::Sp2Complex => {
            d.distance(&bar(&a)) + (&c + &bar(&b)).norm() + (&sigma_bar(&a) + &a).norm() + sym_residual(&b, 1.0)
        }
    }
}

/// Residual of the symmetric-part pattern of `kind`.
pub fn m_pattern_residual(kind: CartanKind, m: &AlgebraElement) -> f64 {
    let [a, b, c, d] = m.split_blocks();
    match kind {
        CartanKind::Sp2 => (&d + &a).norm() + c.distance(&b) + sym_residual(&a, 1.0) + sym_residual(&b, 1.0),
        CartanKind::O11 => (&d + &a).norm() + (&c + &b).norm() + sym_residual(&a, 1.0) + sym_residual(&b, -1.0),
        CartanKind::Sp2Complex => {
            (&d + &bar(&a)).norm() + c.distance(&bar(&b)) + sigma_bar(&a).distance(&a) + sym_residual(&b, 1.0)
        }
    }
}

/// The fixed conjugating matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugator {
    /// `T = (1/√2)[[1, i], [i, 1]]`.
    T,
    /// `R = (1/√2)[[1, 1], [−1, 1]]`.
    R,
    /// `Q = (1/√2)[[1, j], [j, 1]]`.
    Q,
    /// `S = (1/√2)[[1, 0], [0, i]]`.
    S,
}

impl Conjugator {
    pub fn name(self) -> &'static str {
        match self {
            Conjugator::T => "T",
            Conjugator::R => "R",
            Conjugator::Q => "Q",
            Conjugator::S => "S",
        }
    }

    /// The matrix as a `2n × 2n` element over `spec` (entries are scalar
    /// multiples of the identity of `Mat_n`). Fails when `spec` lacks the
    /// required unit.
    pub fn matrix(self, spec: &AlgebraSpec) -> Result<AlgebraElement> {
        let one = AlgebraElement::scalar(*spec, FRAC_1_SQRT_2);
        let zero = AlgebraElement::zeros(*spec);
        let unit = |u: Unit| AlgebraElement::unit(*spec, u, FRAC_1_SQRT_2);
        match self {
            Conjugator::T => {
                let i = unit(Unit::I)?;
                AlgebraElement::from_blocks(&one, &i, &i, &one)
            }
            Conjugator::R => AlgebraElement::from_blocks(&one, &one, &-&one, &one),
            Conjugator::Q => {
                let j = unit(Unit::J)?;
                AlgebraElement::from_blocks(&one, &j, &j, &one)
            }
            Conjugator::S => AlgebraElement::from_blocks(&one, &zero, &zero, &unit(Unit::I)?),
        }
    }

    /// `C⁻¹ m C`.
    pub fn conjugate(self, m: &AlgebraElement) -> Result<AlgebraElement> {
        let c = self.matrix(&m.spec().with_n(m.n() / 2))?;
        Ok(c.inv()? * m * c)
    }

    /// `C m C⁻¹`.
    pub fn conjugate_back(self, m: &AlgebraElement) -> Result<AlgebraElement> {
        let c = self.matrix(&m.spec().with_n(m.n() / 2))?;
        Ok(&c * m * c.inv()?)
    }
}

fn free(spec: AlgebraSpec, scale: f64, rng: &mut impl Rng) -> AlgebraElement {
    random_element(spec, rng).scale(scale)
}

/// Random element of the compact Lie algebra of `gid` (or of its maximal
/// compact subgroup for the non-compact families), with coefficients of
/// size about `scale`.
pub fn random_compact_lie(gid: &GroupId, scale: f64, rng: &mut impl Rng) -> Result<AlgebraElement> {
    let spec = gid.over;
    let skew = |x: AlgebraElement| x.symmetry_part(&spec.sigma, -1.0);
    let sym = |x: AlgebraElement| x.symmetry_part(&spec.sigma, 1.0);
    Ok(match (gid.family, CartanKind::of(gid).ok()) {
        (GroupFamily::OAlg, _) => skew(free(spec, scale, rng)),
        (GroupFamily::O2, _) => {
            let m = free(spec.with_n(2 * spec.n), scale, rng);
            m.symmetry_part(&spec.sigma, -1.0)
        }
        (GroupFamily::AxHat, _) => {
            let a = skew(free(spec, scale, rng));
            let z = AlgebraElement::zeros(spec);
            AlgebraElement::from_blocks(&a, &z, &z, &a)?
        }
        (GroupFamily::OcHat, _) => {
            let a = skew(free(spec, scale, rng));
            let z = AlgebraElement::zeros(spec);
            AlgebraElement::from_blocks(&a, &z, &z, &a)?
        }
        (_, Some(CartanKind::Sp2)) => {
            let a = skew(free(spec, scale, rng));
            let b = sym(free(spec, scale, rng));
            AlgebraElement::from_blocks(&a, &b, &-&b, &a)?
        }
        (_, Some(CartanKind::O11)) => {
            let a = skew(free(spec, scale, rng));
            let b = skew(free(spec, scale, rng));
            AlgebraElement::from_blocks(&a, &b, &b, &a)?
        }
        (_, Some(CartanKind::Sp2Complex)) => {
            let a = free(spec, scale, rng);
            let a = (&a - &sigma_bar(&a)).scale(0.5);
            let b = sym(free(spec, scale, rng));
            AlgebraElement::from_blocks(&a, &b, &-&bar(&b), &bar(&a))?
        }
        _ => return Err(Error::Unsupported(format!("no compact Lie algebra for {gid}"))),
    })
}

/// Random element of the symmetric part `𝔪` of the Cartan decomposition.
pub fn random_symmetric_lie(gid: &GroupId, scale: f64, rng: &mut impl Rng) -> Result<AlgebraElement> {
    let spec = gid.over;
    let mut free = || free(spec, scale, rng);
    let skew = |x: AlgebraElement| x.symmetry_part(&spec.sigma, -1.0);
    let sym = |x: AlgebraElement| x.symmetry_part(&spec.sigma, 1.0);
    Ok(match CartanKind::of(gid)? {
        CartanKind::Sp2 => {
            let a = sym(free());
            let b = sym(free());
            AlgebraElement::from_blocks(&a, &b, &b, &-&a)?
        }
        CartanKind::O11 => {
            let a = sym(free());
            let b = skew(free());
            AlgebraElement::from_blocks(&a, &b, &-&b, &-&a)?
        }
        CartanKind::Sp2Complex => {
            let a = free();
            let a = (&a + &sigma_bar(&a)).scale(0.5);
            let b = sym(free());
            AlgebraElement::from_blocks(&a, &b, &bar(&b), &-&bar(&a))?
        }
    })
}

/// Random element of the full Lie algebra of `gid`.
pub fn random_lie(gid: &GroupId, scale: f64, rng: &mut impl Rng) -> Result<AlgebraElement> {
    match gid.family {
        GroupFamily::Sp2 | GroupFamily::O11 => {
            let k = random_compact_lie(gid, scale, rng)?;
            let m = random_symmetric_lie(gid, scale, rng)?;
            Ok(k + m)
        }
        GroupFamily::AxHat => {
            let a = random_element(gid.over, rng).scale(scale);
            let z = AlgebraElement::zeros(gid.over);
            AlgebraElement::from_blocks(&a, &z, &z, &-&a.sigma())
        }
        GroupFamily::OcHat => {
            let a = random_element(gid.over, rng).scale(scale).symmetry_part(&gid.over.sigma, -1.0);
            let b = random_element(gid.over, rng).scale(scale).symmetry_part(&gid.over.sigma, -1.0);
            AlgebraElement::from_blocks(&a, &b, &-&b, &a)
        }
        _ => random_compact_lie(gid, scale, rng),
    }
}

/// Explicit element of `Sp₂` or `O₍₁,₁₎` carrying the half-space base
/// point to `x + y·u`, where `y` is positive and `u` is the family's unit
/// (`1` for the indefinite orthogonal family, `i` for `Sp₂(A, σ)`, `j` for
/// `Sp₂(A_ℂ, σ_ℂ)`).
///
/// For the quaternionic case the lower-right block is `θ_i(√y)⁻¹` instead
/// of `√y⁻¹`, which is what moving `j` past it requires.
pub fn transporter_matrix(x: &AlgebraElement, y: &AlgebraElement, twisted: bool) -> Result<AlgebraElement> {
    let hermitian = if twisted {
        crate::algebra::AntiInvolution { ext: ExtensionSigma::Conjugate, ..y.spec().sigma }
    } else {
        y.spec().sigma
    };
    let s = y.sqrt_positive(&hermitian)?;
    let d = if twisted { bar(&s).inv()? } else { s.inv()? };
    let b = x * &d;
    AlgebraElement::from_blocks(&s, &b, &AlgebraElement::zeros(*s.spec()), &d)
}

/// Samples a group element of `gid`.
///
/// Non-compact families are sampled as a transporter to a random half-space
/// point composed with the exponential of a random compact Lie element.
pub fn sample_group(gid: &GroupId, rng: &mut impl Rng) -> Result<GroupElement> {
    let spec = gid.over;
    let m = match gid.family {
        GroupFamily::AxHat => {
            let g = random_invertible(spec, rng);
            let z = AlgebraElement::zeros(spec);
            let d = g.sigma().inv()?;
            AlgebraElement::from_blocks(&g, &z, &z, &d)?
        }
        GroupFamily::OcHat
        | GroupFamily::OAlg
        | GroupFamily::O2
        | GroupFamily::KSp2
        | GroupFamily::KO11
        | GroupFamily::KSp2C => random_lie(gid, 0.8, rng)?.exp(),
        GroupFamily::Sp2 | GroupFamily::O11 => {
            let kind = CartanKind::of(gid)?;
            let k = random_compact_lie(gid, 0.8, rng)?.exp();
            let t = match kind {
                CartanKind::Sp2 => {
                    let x = crate::algebra::sample(spec, Constraint::SigmaSym, rng);
                    let y = crate::algebra::sample(spec, Constraint::SigmaPositive, rng);
                    transporter_matrix(&x, &y, false)?
                }
                CartanKind::O11 => {
                    let x = crate::algebra::sample(spec, Constraint::SigmaAntiSym, rng);
                    let y = crate::algebra::sample(spec, Constraint::SigmaPositive, rng);
                    transporter_matrix(&x, &y, false)?
                }
                CartanKind::Sp2Complex => {
                    let x = crate::algebra::sample(spec, Constraint::SigmaSym, rng);
                    let herm = spec.with_ext_sigma(ExtensionSigma::Conjugate);
                    let y = crate::algebra::sample(herm, Constraint::SigmaPositive, rng).retag(spec);
                    transporter_matrix(&x, &y, true)?
                }
            };
            t * k
        }
    };
    Ok(GroupElement { gid: *gid, m })
}

/// [`sample_group`] with a fresh generator seeded by `seed`.
pub fn sample_group_seeded(gid: &GroupId, seed: u64) -> Result<GroupElement> {
    sample_group(gid, &mut crate::algebra::rng_from_seed(seed))
}

#[cfg(test)]
mod tests;
