//! The standard sesquilinear forms on `A²`.

use crate::algebra::{AlgebraElement, AlgebraSpec, AntiInvolution, Pair, Unit};
use crate::error::{Error, Result};

/// The Gram matrices used by the models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `[[0, 1], [−1, 0]]`.
    OmegaSymp,
    /// `[[0, 1], [1, 0]]`.
    OmegaIndef,
    /// `diag(−1, 1)`.
    Bdiag,
    /// `[[0, i], [−i, 0]]`, i.e. `i·ω(x̄, y)`.
    HSp2,
    /// `[[0, j], [−j, 0]]`.
    HSp2c,
    /// `[[0, 1], [−1, 0]]` over a quaternionified algebra.
    OmegaH,
}

/// A form `f(x, y) = Σ σ(x_r)·G_rs·y_s` with a fixed Gram matrix `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SesquilinearForm {
    pub kind: FormKind,
    pub sigma: AntiInvolution,
}

impl SesquilinearForm {
    pub fn new(kind: FormKind, sigma: AntiInvolution) -> Self {
        SesquilinearForm { kind, sigma }
    }

    /// The four Gram entries `[G₁₁, G₁₂, G₂₁, G₂₂]` as scalars of `spec`.
    pub fn gram_entries(&self, spec: &AlgebraSpec) -> Result<[AlgebraElement; 4]> {
        let s = |x: f64| AlgebraElement::scalar(*spec, x);
        let u = |unit: Unit, x: f64| AlgebraElement::unit(*spec, unit, x);
        Ok(match self.kind {
            FormKind::OmegaSymp | FormKind::OmegaH => [s(0.0), s(1.0), s(-1.0), s(0.0)],
            FormKind::OmegaIndef => [s(0.0), s(1.0), s(1.0), s(0.0)],
            FormKind::Bdiag => [s(-1.0), s(0.0), s(0.0), s(1.0)],
            FormKind::HSp2 => [s(0.0), u(Unit::I, 1.0)?, u(Unit::I, -1.0)?, s(0.0)],
            FormKind::HSp2c => [s(0.0), u(Unit::J, 1.0)?, u(Unit::J, -1.0)?, s(0.0)],
        })
    }

    /// The Gram matrix as a `2n × 2n` element over `spec`.
    pub fn gram(&self, spec: &AlgebraSpec) -> Result<AlgebraElement> {
        let [a, b, c, d] = self.gram_entries(spec)?;
        AlgebraElement::from_blocks(&a, &b, &c, &d)
    }

    /// Gram matrix of `(x, y) ↦ f(Mx, y)`, namely `σ(M)ᵗ·G`.
    pub fn pulled_gram(&self, m: &AlgebraElement) -> Result<AlgebraElement> {
        let g = self.gram(&m.spec().with_n(m.n() / 2))?;
        Ok(m.apply_sigma(&self.sigma) * g)
    }
}

/// Evaluates `f(x, y)`.
pub fn eval_form(f: &SesquilinearForm, x: &Pair, y: &Pair) -> Result<AlgebraElement> {
    let spec = x.spec();
    if !spec.same_algebra(y.spec()) || !spec.same_algebra(x.second.spec()) || !spec.same_algebra(y.second.spec()) {
        return Err(Error::SpecMismatch(format!("{} vs {}", x.spec(), y.spec())));
    }
    let [g11, g12, g21, g22] = f.gram_entries(spec)?;
    let sx = x.map(|a| a.apply_sigma(&f.sigma));
    let mut out = AlgebraElement::zeros(*spec);
    for (l, g, r) in [
        (&sx.first, &g11, &y.first),
        (&sx.first, &g12, &y.second),
        (&sx.second, &g21, &y.first),
        (&sx.second, &g22, &y.second),
    ] {
        if !g.is_zero() {
            out = out + l * g * r;
        }
    }
    Ok(out.retag(*spec))
}
