//! Eigenlines of operator-model points and the inverse reconstruction of an
//! operator from its eigenline.

use nalgebra::DVector;
use rand::Rng;

use crate::algebra::linalg::{linear_map_matrix, regularity, svd};
use crate::algebra::{rng_from_seed, AlgebraElement, AlgebraSpec, Pair, Unit};
use crate::error::{Error, Result};
use crate::models::membership::{projective_forms, REGULARITY_FLOOR};
use crate::models::{Family, Model, ModelKind, ModelPoint, Payload};

/// Closed-form candidates below this regularity fall through to the next
/// candidate and finally to the kernel solve.
const FAST_PATH_REGULARITY: f64 = 1e-6;

/// Relative singular-value threshold of the kernel solve.
const KERNEL_TOL: f64 = 1e-8;

fn theta(x: &AlgebraElement) -> AlgebraElement {
    x.theta(Unit::I).expect("complexified algebra")
}

/// The unit `μ` with `λ = s·μ⁻¹` the eigenvalue of the `s`-eigenline:
/// `1`, `i` or `j`.
pub(crate) fn structure_unit(family: Family, spec: &AlgebraSpec) -> AlgebraElement {
    match family.chart_unit() {
        Some(u) => AlgebraElement::unit(*spec, u, 1.0).expect("point algebra carries the chart unit"),
        None => AlgebraElement::identity(*spec),
    }
}

/// The eigenvalue `λ` of the `s`-eigenline: `s`, `−s·i` or `−s·j`.
pub fn eigenvalue(family: Family, spec: &AlgebraSpec, sign: f64) -> AlgebraElement {
    match family.chart_unit() {
        Some(_) => structure_unit(family, spec).scale(-sign),
        None => AlgebraElement::scalar(*spec, sign),
    }
}

/// Applies the operator `J` to `v` in the algebra of the projective model:
/// `Jv`, its linear extension, or `Mθ_i(v)` for anti-linear operators.
pub fn apply_operator(family: Family, j: &AlgebraElement, v: &Pair) -> Result<Pair> {
    let m = j.lift(v.spec())?;
    Ok(match family {
        Family::Sp2c => Pair::apply(&m, &v.map(theta)),
        _ => Pair::apply(&m, v),
    })
}

fn operator_of(p: &ModelPoint) -> Result<&AlgebraElement> {
    match &p.payload {
        Payload::C { j, .. } => Ok(j),
        _ => Err(Error::SpecMismatch(format!("{} is not an operator model", p.model.id))),
    }
}

fn line_model(p: &ModelPoint, sign: i8) -> Result<Model> {
    p.model.with_kind(ModelKind::P, sign)
}

/// `‖J(x) − x·λ‖`, relative to `‖x‖`.
pub fn eigen_residual(p: &ModelPoint, x: &Pair, sign: i8) -> Result<f64> {
    let family = p.model.id.family;
    let j = operator_of(p)?;
    let lambda = eigenvalue(family, x.spec(), f64::from(sign));
    let jx = apply_operator(family, j, x)?;
    Ok(jx.sub(&x.right_mul(&lambda)).norm() / x.norm().max(f64::MIN_POSITIVE))
}

/// The `s`-eigenline of an operator-model point, the projective point it
/// corresponds to. Uses the closed form `e + s·J(e)·μ` for `e = e₁, e₂` and
/// falls back to [`eigenline_kernel`].
pub fn eigenline(p: &ModelPoint, sign: i8) -> Result<Pair> {
    let family = p.model.id.family;
    let j = operator_of(p)?;
    let spec = line_model(p, sign)?.point_spec();
    let mu = structure_unit(family, &spec);
    let s = f64::from(sign);
    let zero = AlgebraElement::zeros(spec);
    let one = AlgebraElement::identity(spec);
    for e in [Pair::new(one.clone(), zero.clone()), Pair::new(zero, one)] {
        let x = e.add(&apply_operator(family, j, &e)?.right_mul(&mu).scale(s));
        if regularity(&x) >= FAST_PATH_REGULARITY {
            return Ok(x);
        }
    }
    eigenline_kernel(p, sign)
}

/// The `s`-eigenline as the real-linear kernel of `v ↦ J(v) − v·λ`.
pub fn eigenline_kernel(p: &ModelPoint, sign: i8) -> Result<Pair> {
    let family = p.model.id.family;
    let j = operator_of(p)?;
    let spec = line_model(p, sign)?.point_spec();
    let lambda = eigenvalue(family, &spec, f64::from(sign));
    let dim = spec.dim();
    let to_pair = |c: &[f64]| {
        Pair::new(
            AlgebraElement::from_coefficients(spec, c[..dim].to_vec()).expect("dimension matches"),
            AlgebraElement::from_coefficients(spec, c[dim..].to_vec()).expect("dimension matches"),
        )
    };
    let map = linear_map_matrix(2 * dim, |c| {
        let v = to_pair(c);
        let r = apply_operator(family, j, &v).expect("specs match").sub(&v.right_mul(&lambda));
        [r.first.coefficients(), r.second.coefficients()].concat()
    });
    let basis: Vec<Pair> = svd(&map)?.kernel(KERNEL_TOL).iter().map(|v| to_pair(v.as_slice())).collect();
    if basis.len() != dim {
        return Err(Error::KernelRankMismatch { expected: dim, found: basis.len() });
    }
    generator(&basis)
}

/// A regular element of the real span of `basis`, assumed to be a free
/// rank-one right module. Generic combinations are regular, so a few
/// deterministic pseudo-random draws suffice.
pub(crate) fn generator(basis: &[Pair]) -> Result<Pair> {
    let mut best: Option<(f64, Pair)> = None;
    for seed in 0..16 {
        let mut rng = rng_from_seed(seed);
        let weights = DVector::<f64>::from_fn(basis.len(), |_, _| rng.gen_range(-1.0..1.0));
        let mut x = basis[0].scale(0.0);
        for (b, w) in basis.iter().zip(weights.iter()) {
            x = x.add(&b.scale(*w));
        }
        let reg = regularity(&x);
        if reg >= FAST_PATH_REGULARITY {
            return Ok(x);
        }
        if best.as_ref().is_none_or(|(r, _)| reg > *r) {
            best = Some((reg, x));
        }
    }
    match best {
        Some((reg, x)) if reg >= REGULARITY_FLOOR => Ok(x),
        _ => Err(Error::NotRegular("no regular generator in the span".into())),
    }
}

/// The row `(r₁, r₂)` with `h(x, v) = r₁v₁ + r₂v₂` for the indefinite form
/// `h` of the projective model.
fn form_row(model: &Model, x: &Pair) -> Result<(AlgebraElement, AlgebraElement)> {
    let (h, _) = projective_forms(model);
    let h = h.ok_or_else(|| Error::Unsupported(format!("{} has no operator model", model.id)))?;
    let [g11, g12, g21, g22] = h.gram_entries(x.spec())?;
    let sx = x.map(|a| a.apply_sigma(&h.sigma));
    Ok((&sx.first * &g11 + &sx.second * &g21, &sx.first * &g12 + &sx.second * &g22))
}

/// `x·k·(r₁, r₂)` as a `2 × 2` block matrix.
fn outer(x: &Pair, k: &AlgebraElement, r: &(AlgebraElement, AlgebraElement)) -> AlgebraElement {
    let (a, b) = (&x.first * k, &x.second * k);
    AlgebraElement::from_blocks(&(&a * &r.0), &(&a * &r.1), &(&b * &r.0), &(&b * &r.1)).expect("square blocks")
}

/// The `h`-orthogonal projector onto the line `x·A` and, for a direction
/// `w`, its derivative.
fn projector(model: &Model, x: &Pair, w: Option<&Pair>) -> Result<(AlgebraElement, Option<AlgebraElement>)> {
    let r = form_row(model, x)?;
    let gram = &r.0 * &x.first + &r.1 * &x.second;
    let k = gram.inv().map_err(|_| Error::NotInModel("h(x, x) is singular".into()))?;
    let p = outer(x, &k, &r);
    let dp = match w {
        None => None,
        Some(w) => {
            let dr = form_row(model, w)?;
            let dgram = &dr.0 * &x.first + &dr.1 * &x.second + &r.0 * &w.first + &r.1 * &w.second;
            let dk = (&k * &dgram * &k).scale(-1.0);
            Some(outer(w, &k, &r) + outer(x, &dk, &r) + outer(x, &k, &dr))
        }
    };
    Ok((p, dp))
}

/// Turns a projector (or its derivative) into the operator (or its
/// derivative): `s(2P − I)`, `s·i(I − 2P)` restricted to `A`, or
/// `s(I − 2P)·j` restricted to `A_ℂ`.
fn operator_from_projector(
    model: &Model,
    c_spec: &AlgebraSpec,
    p: &AlgebraElement,
    affine: bool,
    sign: f64,
) -> Result<AlgebraElement> {
    let spec = *p.spec();
    let id = if affine { AlgebraElement::identity(spec) } else { AlgebraElement::zeros(spec) };
    let reflection = id - p.scale(2.0);
    let wide = c_spec.with_n(spec.n);
    match model.id.family.chart_unit() {
        None => Ok(reflection.scale(-sign).retag(wide)),
        Some(Unit::I) => {
            let i = AlgebraElement::unit(spec, Unit::I, sign)?;
            (i * reflection).restrict(&wide)
        }
        Some(_) => {
            let j = AlgebraElement::unit(spec, Unit::J, sign)?;
            (reflection * j).restrict(&wide)
        }
    }
}

/// The operator whose `s`-eigenline is `x·A` (and whose `−s`-eigenline is
/// its `h`-orthogonal complement).
pub fn operator_from_line(model: &Model, x: &Pair) -> Result<AlgebraElement> {
    let c_spec = model.with_kind(ModelKind::C, 1)?.point_spec();
    let (p, _) = projector(model, x, None)?;
    operator_from_projector(model, &c_spec, &p, true, model.id.sign_f64())
}

/// Derivative of [`operator_from_line`] at `x` in direction `w`.
pub fn operator_from_line_derivative(model: &Model, x: &Pair, w: &Pair) -> Result<AlgebraElement> {
    let c_spec = model.with_kind(ModelKind::C, 1)?.point_spec();
    let (_, dp) = projector(model, x, Some(w))?;
    operator_from_projector(model, &c_spec, &dp.expect("direction given"), false, model.id.sign_f64())
}
