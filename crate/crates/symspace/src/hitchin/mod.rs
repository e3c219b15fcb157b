//! Pointwise evaluation of the Hitchin base: norm maps on complexified
//! tangent data, their conjugation invariants, trace powers, and the
//! `Sp₄(ℝ)` Hitchin-section example.

#[cfg(test)]
mod tests;

use nalgebra::{Complex, DMatrix};
use rand::Rng;

use crate::algebra::{
    charpoly, sample, AlgebraElement, AlgebraSpec, AntiInvolution, Constraint, Extension, ExtensionSigma, Unit,
};
use crate::error::{Error, Result};

/// Pattern residuals above this bound are rejected.
pub const PATTERN_TOL: f64 = 1e-10;

/// The families with a norm map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HiggsFamily {
    /// `Sp₂(A_ℂ, σ_ℂ)`: `q ∈ A_ℍ^{σ₀}`, complexified.
    Sp2c,
    /// `Ô_c`: `q ∈ A^{−σ}`, complexified.
    Oc,
}

impl HiggsFamily {
    pub fn name(self) -> &'static str {
        match self {
            HiggsFamily::Sp2c => "SP2C",
            HiggsFamily::Oc => "OC",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [HiggsFamily::Sp2c, HiggsFamily::Oc].into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }

    /// The algebra of `q` over the base algebra `A`: `A_ℍ` with `σ₀`, or
    /// `A`, in either case with the central unit adjoined as the
    /// complexification.
    pub fn vector_spec(self, over: &AlgebraSpec) -> AlgebraSpec {
        match self {
            HiggsFamily::Sp2c => over.quaternionify(ExtensionSigma::Sigma0).with_central(),
            HiggsFamily::Oc => over.with_central(),
        }
    }

    /// The involution defining the pattern of `q`, and the pattern sign.
    fn pattern(self, spec: &AlgebraSpec) -> (AntiInvolution, f64) {
        match self {
            HiggsFamily::Sp2c => (spec.sigma, 1.0),
            HiggsFamily::Oc => (spec.sigma, -1.0),
        }
    }

    /// The Hermitian involution the norm values are positive for: `σ₁` on
    /// `A_ℍ`, or `σ`.
    pub fn hermitian_sigma(self, spec: &AlgebraSpec) -> AntiInvolution {
        match self {
            HiggsFamily::Sp2c => AntiInvolution { ext: ExtensionSigma::Sigma1, ..spec.sigma },
            HiggsFamily::Oc => spec.sigma,
        }
    }
}

/// A complexified tangent vector at the base point.
#[derive(Clone, Debug, PartialEq)]
pub struct HiggsVector {
    pub family: HiggsFamily,
    pub q: AlgebraElement,
}

impl HiggsVector {
    /// Checked constructor: `q` lives in the family's algebra and is
    /// `σ₀`-fixed (`Sp₂(A_ℂ, σ_ℂ)`) or `σ`-antifixed (`Ô_c`).
    pub fn new(family: HiggsFamily, q: AlgebraElement) -> Result<Self> {
        let spec = *q.spec();
        let expected = family.vector_spec(&spec.ground_part());
        if !spec.same_algebra(&expected) {
            return Err(Error::SpecMismatch(format!("{} vector over {spec}, expected {expected}", family.name())));
        }
        let q = q.retag(expected);
        let residual = pattern_residual(family, &q);
        if residual > PATTERN_TOL * (1.0 + q.norm()) {
            return Err(Error::NotPattern(format!("{} residual {residual:.3e}", family.name())));
        }
        Ok(HiggsVector { family, q })
    }

    /// A random vector of the family over `over`.
    pub fn sample(family: HiggsFamily, over: &AlgebraSpec, rng: &mut impl Rng) -> Result<Self> {
        let spec = family.vector_spec(over);
        let (sigma, sign) = family.pattern(&spec);
        let q = sample(spec, Constraint::Free, rng).symmetry_part(&sigma, sign);
        HiggsVector::new(family, q)
    }

    /// `k·q·σ₀(k)` or `k·q·σ(k)`.
    pub fn congruence(&self, k: &AlgebraElement) -> Result<HiggsVector> {
        let spec = *self.q.spec();
        let k = k.lift(&spec)?;
        let (sigma, _) = self.family.pattern(&spec);
        HiggsVector::new(self.family, &k * &self.q * k.apply_sigma(&sigma))
    }
}

/// `‖q ∓ τ(q)‖` for the pattern involution `τ`.
pub fn pattern_residual(family: HiggsFamily, q: &AlgebraElement) -> f64 {
    let (sigma, sign) = family.pattern(q.spec());
    q.distance(&q.apply_sigma(&sigma).scale(sign))
}

/// A random element of the compact group acting on the family's vectors by
/// congruence: `σ₁`-unitary in `A_ℍ`, or `σ`-orthogonal in `A`.
pub fn sample_compact(family: HiggsFamily, over: &AlgebraSpec, rng: &mut impl Rng) -> AlgebraElement {
    let spec = match family {
        HiggsFamily::Sp2c => over.quaternionify(ExtensionSigma::Sigma1),
        HiggsFamily::Oc => *over,
    };
    sample(spec, Constraint::Free, rng).symmetry_part(&spec.sigma, -1.0).exp()
}

/// The norm value `q·σ₁(q)` (`Sp₂(A_ℂ, σ_ℂ)`) or `q·σ(q) = −q²` (`Ô_c`),
/// tagged with the family's Hermitian involution.
pub fn norm_value(hv: &HiggsVector) -> Result<AlgebraElement> {
    let hv = HiggsVector::new(hv.family, hv.q.clone())?;
    let spec = *hv.q.spec();
    let tau = hv.family.hermitian_sigma(&spec);
    let value = match hv.family {
        HiggsFamily::Sp2c => &hv.q * &hv.q.apply_sigma(&tau),
        HiggsFamily::Oc => (&hv.q * &hv.q).scale(-1.0),
    };
    Ok(value.with_sigma(tau))
}

/// Coefficients `c₁, …, c_N` of the monic characteristic polynomial of the
/// complex image of the norm value; `c_d` is homogeneous of degree `2d` in
/// `q`.
pub fn invariants(hv: &HiggsVector) -> Result<Vec<Complex<f64>>> {
    Ok(charpoly(&norm_value(hv)?.embed_complex()))
}

/// Complex trace of an element: the coefficient of `1` in the diagonal sum,
/// plus `i` times the coefficient of the complexifying unit (the central
/// unit if present, otherwise a complex extension unit).
pub fn complex_trace(x: &AlgebraElement) -> Complex<f64> {
    let spec = x.spec();
    let tower = spec.tower;
    let d = tower.dim();
    let imag_index = if tower.central {
        Some(tower.flat(0, 0, 1))
    } else if tower.extension == Extension::Complex {
        tower.unit_index(Unit::I)
    } else {
        None
    };
    let mut re = 0.0;
    let mut im = 0.0;
    for i in 0..spec.n {
        let entry = &x.coefficients()[(i * spec.n + i) * d..(i * spec.n + i + 1) * d];
        re += entry[0];
        if let Some(k) = imag_index {
            im += entry[k];
        }
    }
    Complex::new(re, im)
}

/// `Tr(L^{2d})` for `d = 1, …, dmax`.
pub fn trace_powers(l: &AlgebraElement, dmax: usize) -> Vec<Complex<f64>> {
    let square = l * l;
    let mut power = AlgebraElement::identity(*l.spec());
    (1..=dmax)
        .map(|_| {
            power = &power * &square;
            complex_trace(&power)
        })
        .collect()
}

/// The `Sp₄(ℝ)` Hitchin-section Higgs field at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct HkrField {
    /// `[[q₄, q₂], [q₂, 1]]`.
    pub beta: AlgebraElement,
    /// `[[0, 1], [1, 0]]`.
    pub gamma: AlgebraElement,
    /// `[[0, β], [γ, 0]]` as a real `4 × 4` matrix.
    pub l: AlgebraElement,
}

/// The Higgs field with quadratic datum `q2` and quartic datum `q4`.
pub fn hkr_sp4(q2: f64, q4: f64) -> HkrField {
    let r2 = AlgebraSpec::real(2);
    let m = |v: [f64; 4]| AlgebraElement::from_real_matrix(r2, &DMatrix::from_row_slice(2, 2, &v)).expect("real 2 x 2");
    let beta = m([q4, q2, q2, 1.0]);
    let gamma = m([0.0, 1.0, 1.0, 0.0]);
    let zero = AlgebraElement::zeros(r2);
    let l = AlgebraElement::from_blocks(&zero, &beta, &gamma, &zero).expect("square blocks");
    HkrField { beta, gamma, l }
}

/// Recovers `(q2, q4)` from `Tr L² = 4q₂` and `Tr L⁴ = 4(q₂² + q₄)`.
pub fn hkr_recover(l: &AlgebraElement) -> Result<(f64, f64)> {
    let spec = l.spec();
    if spec.n != 4 || spec.tower != AlgebraSpec::real(4).tower {
        return Err(Error::ShapeMismatch(format!("expected a real 4 x 4 matrix, got {spec}")));
    }
    let [a, _, _, d] = l.split_blocks();
    if !a.is_zero() || !d.is_zero() {
        return Err(Error::ShapeMismatch("diagonal blocks must vanish".into()));
    }
    let traces = trace_powers(l, 2);
    let q2 = traces[0].re / 4.0;
    let q4 = traces[1].re / 4.0 - q2 * q2;
    Ok((q2, q4))
}
