//! Canonical coordinates on tangent spaces of the operator model of
//! `Sp₂(A, σ)`.

use crate::algebra::linalg::solve_right;
use crate::algebra::{AlgebraElement, AntiInvolution, ExtensionSigma, Pair, Unit};
use crate::error::{Error, Result};
use crate::models::{eval_form, Family, FormKind, ModelKind, Payload, SesquilinearForm, TangentPayload, TangentVector};

use super::eigen::eigenline;

fn theta(x: &AlgebraElement) -> AlgebraElement {
    x.theta(Unit::I).expect("complexified algebra")
}

/// Two coordinate systems on `T_J` of the operator model of `Sp₂(A, σ)`.
///
/// * `l = f_J(L(1, 0))`, where `f_J` identifies `A²` with `A_ℂ` by
///   `(a, 0) + J(b, 0) ↦ a + ib`, and `r = ω(J(1, 0), (1, 0))`; `r·l` is
///   `σ_ℂ`-symmetric.
/// * `(a₊, a₋)` with `L v₊ = v₋a₊` and `L v₋ = v₊a₋`, for the eigenbasis
///   `J v₊ = v₊i`, `v₋ = i·v̄₊`, normalized by `ω_ℂ(v₊, v₋) = 1`; both are
///   `σ_ℂ`-symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalTangentCoords {
    pub r: AlgebraElement,
    pub l: AlgebraElement,
    pub a_plus: AlgebraElement,
    pub a_minus: AlgebraElement,
    pub v_plus: Pair,
    pub v_minus: Pair,
}

impl CanonicalTangentCoords {
    fn linear_sigma(&self) -> AntiInvolution {
        AntiInvolution { ext: ExtensionSigma::Linear, ..self.l.spec().sigma }
    }

    /// `‖rl − σ_ℂ(rl)‖`.
    pub fn rl_residual(&self) -> Result<f64> {
        let rl = self.r.lift(self.l.spec())? * &self.l;
        Ok(rl.distance(&rl.apply_sigma(&self.linear_sigma())))
    }

    /// The larger `σ_ℂ`-symmetry defect of `a₊` and `a₋`.
    pub fn split_residual(&self) -> f64 {
        let tau = self.linear_sigma();
        let defect = |a: &AlgebraElement| a.distance(&a.apply_sigma(&tau));
        defect(&self.a_plus).max(defect(&self.a_minus))
    }

    /// `ω_ℂ(v₊, v₋) − 1`.
    pub fn normalization_residual(&self) -> Result<f64> {
        let omega = SesquilinearForm::new(FormKind::OmegaSymp, self.linear_sigma());
        Ok(eval_form(&omega, &self.v_plus, &self.v_minus)?.add_scalar(-1.0).norm())
    }

    /// `L_ℂ = V·[[0, a₋], [a₊, 0]]·V⁻¹` with `V = (v₊ v₋)`.
    pub fn reconstruct(&self) -> Result<AlgebraElement> {
        let v = AlgebraElement::from_blocks(
            &self.v_plus.first,
            &self.v_minus.first,
            &self.v_plus.second,
            &self.v_minus.second,
        )?;
        let zero = AlgebraElement::zeros(*self.a_plus.spec());
        let inner = AlgebraElement::from_blocks(&zero, &self.a_minus, &self.a_plus, &zero)?;
        Ok(&v * &inner * v.inv()?)
    }
}

/// Both coordinate systems of a tangent vector at an operator-model point
/// of `Sp₂(A, σ)`.
pub fn canonical_tangent_coords(v: &TangentVector) -> Result<CanonicalTangentCoords> {
    let model = v.at.model;
    if model.id.family != Family::Sp2 || model.id.kind != ModelKind::C {
        return Err(Error::Unsupported(format!("canonical coordinates on {}", model.id)));
    }
    super::check_tangent(v)?;
    let (j, l_op) = match (&v.at.payload, &v.payload) {
        (Payload::C { j, .. }, TangentPayload::C(l)) => (j, l),
        _ => return Err(Error::SpecMismatch("operator tangent expected".into())),
    };
    let spec = model.over;
    let cspec = model.complexified();
    let [a, _, c, _] = j.split_blocks();
    let [l11, _, l21, _] = l_op.split_blocks();
    let r = c.apply_sigma(&spec.sigma).scale(-1.0);
    let b_coord = c.inv()? * &l21;
    let a_coord = &l11 - &(&a * &b_coord);
    let l = AlgebraElement::from_ext_parts(cspec, &[a_coord.retag(spec), b_coord.retag(spec)])?;

    let x = eigenline(&v.at, -1)?;
    let omega = SesquilinearForm::new(FormKind::OmegaSymp, cspec.sigma);
    let i = AlgebraElement::unit(cspec, Unit::I, 1.0)?;
    let m = &i * &eval_form(&omega, &x, &x.map(theta))?;
    let conj = AntiInvolution { ext: ExtensionSigma::Conjugate, ..cspec.sigma };
    let b = m.positive_power(&conj, -0.5)?;
    let v_plus = x.right_mul(&theta(&b));
    let v_minus = v_plus.map(theta).right_mul(&i);

    let lc = l_op.lift(&cspec)?;
    let (a_plus, _) = solve_right(&v_minus, &Pair::apply(&lc, &v_plus))?;
    let (a_minus, _) = solve_right(&v_plus, &Pair::apply(&lc, &v_minus))?;
    Ok(CanonicalTangentCoords { r, l, a_plus, a_minus, v_plus, v_minus })
}
