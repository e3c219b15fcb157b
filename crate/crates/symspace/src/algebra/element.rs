//! Matrices over a scalar tower and their exact componentwise arithmetic.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use super::involution::{AlgebraSpec, AntiInvolution};
use super::tower::{Extension, ScalarTower, Unit};
use crate::error::{Error, Result};

/// An `n × n` matrix over the scalar tower of its spec.
///
/// Coefficients are stored entry by entry in row-major order, each entry as
/// `tower.dim()` real coefficients over the fixed unit basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    spec: AlgebraSpec,
    data: Vec<f64>,
}

/// Multiply-accumulate of two scalars: `out += x·y`.
#[inline]
fn scalar_mul_acc(tower: &ScalarTower, out: &mut [f64], x: &[f64], y: &[f64]) {
    let tables = tower.tables();
    let d = tables.dim;
    for (p, &xp) in x.iter().enumerate() {
        if xp == 0.0 {
            continue;
        }
        let row = &tables.product[p * d..(p + 1) * d];
        for (q, &yq) in y.iter().enumerate() {
            let (r, s) = row[q];
            out[r] += s * xp * yq;
        }
    }
}

impl AlgebraElement {
    /// Builds an element from its raw coefficient vector.
    pub fn from_coefficients(spec: AlgebraSpec, data: Vec<f64>) -> Result<Self> {
        if data.len() != spec.dim() {
            return Err(Error::ShapeMismatch(format!("expected {} coefficients, got {}", spec.dim(), data.len())));
        }
        Ok(AlgebraElement { spec, data })
    }

    pub fn zeros(spec: AlgebraSpec) -> Self {
        AlgebraElement { spec, data: vec![0.0; spec.dim()] }
    }

    pub fn identity(spec: AlgebraSpec) -> Self {
        Self::scalar(spec, 1.0)
    }

    /// `x · Id`.
    pub fn scalar(spec: AlgebraSpec, x: f64) -> Self {
        let mut a = Self::zeros(spec);
        for i in 0..spec.n {
            a.entry_mut(i, i)[0] = x;
        }
        a
    }

    /// `x · u · Id` for the basis scalar `u` with flat index `flat`.
    pub fn basis_scalar(spec: AlgebraSpec, flat: usize, x: f64) -> Self {
        let mut a = Self::zeros(spec);
        for i in 0..spec.n {
            a.entry_mut(i, i)[flat] = x;
        }
        a
    }

    /// `x · u · Id` for an adjoined unit `u`.
    pub fn unit(spec: AlgebraSpec, unit: Unit, x: f64) -> Result<Self> {
        let flat = spec.tower.unit_index(unit).ok_or_else(|| Error::UnknownUnit(format!("{unit:?} in {spec}")))?;
        Ok(Self::basis_scalar(spec, flat, x))
    }

    /// A real matrix viewed inside the algebra.
    pub fn from_real_matrix(spec: AlgebraSpec, m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != spec.n || m.ncols() != spec.n {
            return Err(Error::ShapeMismatch(format!(
                "expected a {0}×{0} matrix, got {1}×{2}",
                spec.n,
                m.nrows(),
                m.ncols()
            )));
        }
        let mut a = Self::zeros(spec);
        for i in 0..spec.n {
            for j in 0..spec.n {
                a.entry_mut(i, j)[0] = m[(i, j)];
            }
        }
        Ok(a)
    }

    /// Builds an element entry by entry from scalar coefficient slices.
    pub fn from_fn(spec: AlgebraSpec, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut a = Self::zeros(spec);
        let d = spec.tower.dim();
        for i in 0..spec.n {
            for j in 0..spec.n {
                let e = a.entry_mut(i, j);
                for (b, c) in e.iter_mut().enumerate().take(d) {
                    *c = f(i, j, b);
                }
            }
        }
        a
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> &[f64] {
        let d = self.spec.tower.dim();
        let start = (i * self.spec.n + j) * d;
        &self.data[start..start + d]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let d = self.spec.tower.dim();
        let start = (i * self.spec.n + j) * d;
        &mut self.data[start..start + d]
    }

    /// The same matrix tagged with another involution on the same tower.
    pub fn with_sigma(mut self, sigma: AntiInvolution) -> Self {
        self.spec.sigma = sigma;
        self
    }

    /// The same matrix tagged with the spec `spec`, which must describe the
    /// same algebra.
    pub fn retag(mut self, spec: AlgebraSpec) -> Self {
        debug_assert!(self.spec.same_algebra(&spec));
        self.spec = spec;
        self
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.spec.same_algebra(&other.spec) {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("{} vs {}", self.spec, other.spec)))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(AlgebraElement { spec: self.spec, data })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(AlgebraElement { spec: self.spec, data })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.spec.n;
        let tower = self.spec.tower;
        let mut out = Self::zeros(self.spec);
        let d = tower.dim();
        for i in 0..n {
            for k in 0..n {
                let x = self.entry(i, k);
                if x.iter().all(|&c| c == 0.0) {
                    continue;
                }
                for j in 0..n {
                    let y = other.entry(k, j);
                    let start = (i * n + j) * d;
                    scalar_mul_acc(&tower, &mut out.data[start..start + d], x, y);
                }
            }
        }
        Ok(out)
    }

    /// Multiplication by a real number.
    pub fn scale(&self, x: f64) -> Self {
        AlgebraElement { spec: self.spec, data: self.data.iter().map(|c| c * x).collect() }
    }

    /// `self + x·Id`.
    pub fn add_scalar(&self, x: f64) -> Self {
        let mut a = self.clone();
        for i in 0..self.spec.n {
            a.entry_mut(i, i)[0] += x;
        }
        a
    }

    /// Applies the distinguished involution of the element's own spec.
    pub fn sigma(&self) -> Self {
        self.apply_sigma(&self.spec.sigma)
    }

    /// Applies `σ(a)_{rs} = τ(a_{sr})`.
    pub fn apply_sigma(&self, sigma: &AntiInvolution) -> Self {
        let signs = sigma.basis_signs(&self.spec.tower);
        let n = self.spec.n;
        let mut out = Self::zeros(self.spec);
        for i in 0..n {
            for j in 0..n {
                let src = self.entry(j, i);
                let dst = out.entry_mut(i, j);
                for ((d, s), t) in dst.iter_mut().zip(src).zip(&signs) {
                    *d = s * t;
                }
            }
        }
        out
    }

    /// `(a + sign·σ(a)) / 2`, which is `σ`-symmetric (`sign = 1`) or
    /// `σ`-antisymmetric (`sign = −1`).
    pub fn symmetry_part(&self, sigma: &AntiInvolution, sign: f64) -> Self {
        let s = self.apply_sigma(sigma);
        let data = self.data.iter().zip(&s.data).map(|(a, b)| 0.5 * (a + sign * b)).collect();
        AlgebraElement { spec: self.spec, data }
    }

    /// The automorphism `θ_u`: for a complex or central unit it negates the
    /// `u`-components. On a quaternionic extension it is conjugation by the
    /// cyclically next unit, so `θ_i` negates `i` and `k`, `θ_j` negates `j`
    /// and `i`, and `θ_k` negates `k` and `j`. In particular `θ_i(x + yj)`
    /// conjugates the `ℂ{i}`-coefficients `x` and `y`.
    pub fn theta(&self, unit: Unit) -> Result<Self> {
        let tower = self.spec.tower;
        if !tower.has_unit(unit) {
            return Err(Error::UnknownUnit(format!("{unit:?} in {}", self.spec)));
        }
        let negate = |flat: usize| -> bool {
            let b = tower.split(flat);
            match unit {
                Unit::Central => b.central == 1,
                Unit::I if tower.extension == Extension::Complex => b.ext == 1,
                Unit::I => b.ext == 1 || b.ext == 3,
                Unit::J => b.ext == 1 || b.ext == 2,
                Unit::K => b.ext == 2 || b.ext == 3,
            }
        };
        let d = tower.dim();
        let mut out = self.clone();
        for (idx, c) in out.data.iter_mut().enumerate() {
            if negate(idx % d) {
                *c = -*c;
            }
        }
        Ok(out)
    }

    /// Coefficient of the unit `1` in the sum of the diagonal entries.
    pub fn reduced_trace(&self) -> f64 {
        (0..self.spec.n).map(|i| self.entry(i, i)[0]).sum()
    }

    /// Frobenius norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0.0)
    }

    /// Norm of `self − other`.
    pub fn distance(&self, other: &Self) -> f64 {
        debug_assert!(self.spec.same_algebra(&other.spec));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// Embeds the element into a larger tower (adjoining units); the result
    /// carries `target`'s involution tag and keeps the matrix size.
    pub fn lift(&self, target: &AlgebraSpec) -> Result<Self> {
        let from = self.spec.tower;
        let to = target.tower;
        if !to.contains(&from) {
            return Err(Error::SpecMismatch(format!("cannot lift {} into {}", self.spec, target)));
        }
        let spec = target.with_n(self.spec.n);
        if from == to {
            return Ok(AlgebraElement { spec, data: self.data.clone() });
        }
        let mut out = Self::zeros(spec);
        let (fd, td) = (from.dim(), to.dim());
        let map: Vec<usize> = (0..fd)
            .map(|f| {
                let b = from.split(f);
                to.flat(b.ground, b.ext, b.central)
            })
            .collect();
        for e in 0..spec.n * spec.n {
            for (f, &t) in map.iter().enumerate() {
                out.data[e * td + t] = self.data[e * fd + f];
            }
        }
        Ok(out)
    }

    /// Keeps only the components that exist in the smaller tower of
    /// `target`, discarding the others.
    pub fn restrict(&self, target: &AlgebraSpec) -> Result<Self> {
        let from = self.spec.tower;
        let to = target.tower;
        if !from.contains(&to) {
            return Err(Error::SpecMismatch(format!("cannot restrict {} to {}", self.spec, target)));
        }
        let spec = target.with_n(self.spec.n);
        let (fd, td) = (from.dim(), to.dim());
        let mut out = Self::zeros(spec);
        for e in 0..spec.n * spec.n {
            for t in 0..td {
                let b = to.split(t);
                out.data[e * td + t] = self.data[e * fd + from.flat(b.ground, b.ext, b.central)];
            }
        }
        Ok(out)
    }

    /// The coefficient matrix of the extension basis unit with index `e`
    /// (`0 = 1`, then `i, j, k`), as an element without extension units.
    pub fn ext_part(&self, e: usize) -> AlgebraElement {
        let from = self.spec.tower;
        let spec = self.spec.strip_extension();
        let to = spec.tower;
        let (fd, td) = (from.dim(), to.dim());
        let mut out = Self::zeros(spec);
        for idx in 0..spec.n * spec.n {
            for t in 0..td {
                let b = to.split(t);
                out.data[idx * td + t] = self.data[idx * fd + from.flat(b.ground, e, b.central)];
            }
        }
        out
    }

    /// Inverse of [`AlgebraElement::ext_part`]: `Σ_e parts[e]·u_e`.
    pub fn from_ext_parts(spec: AlgebraSpec, parts: &[AlgebraElement]) -> Result<AlgebraElement> {
        let to = spec.tower;
        if parts.len() != to.extension.dim() {
            return Err(Error::ShapeMismatch(format!("expected {} parts", to.extension.dim())));
        }
        let mut out = Self::zeros(spec);
        let td = to.dim();
        for (e, part) in parts.iter().enumerate() {
            let from = part.spec.tower;
            if part.spec.n != spec.n || from != spec.strip_extension().tower {
                return Err(Error::SpecMismatch(format!("{} is not a part of {}", part.spec, spec)));
            }
            let fd = from.dim();
            for idx in 0..spec.n * spec.n {
                for f in 0..fd {
                    let b = from.split(f);
                    out.data[idx * td + to.flat(b.ground, e, b.central)] = part.data[idx * fd + f];
                }
            }
        }
        Ok(out)
    }

    /// Splits a `2m × 2m` matrix into its four `m × m` blocks
    /// `[top-left, top-right, bottom-left, bottom-right]`.
    pub fn split_blocks(&self) -> [AlgebraElement; 4] {
        let n = self.spec.n;
        assert!(n.is_multiple_of(2), "block split of odd-sized matrix");
        let m = n / 2;
        let spec = self.spec.with_n(m);
        let block = |r: usize, c: usize| {
            let mut b = Self::zeros(spec);
            for i in 0..m {
                for j in 0..m {
                    b.entry_mut(i, j).copy_from_slice(self.entry(r * m + i, c * m + j));
                }
            }
            b
        };
        [block(0, 0), block(0, 1), block(1, 0), block(1, 1)]
    }

    /// Assembles `[[a, b], [c, d]]` into a matrix of twice the size.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        for x in [b, c, d] {
            a.check_same(x)?;
        }
        let m = a.spec.n;
        let mut out = Self::zeros(a.spec.with_n(2 * m));
        for (r, c_, blk) in [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, d)] {
            for i in 0..m {
                for j in 0..m {
                    out.entry_mut(r * m + i, c_ * m + j).copy_from_slice(blk.entry(i, j));
                }
            }
        }
        Ok(out)
    }

    /// Commutator `ab − ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            /// # Panics
            /// If the operands live in different algebras; use the checked
            /// method to get an error instead.
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$checked(rhs).expect("algebra element spec mismatch")
            }
        }
        impl $trait<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                self.$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, checked_add);
binary_op!(Sub, sub, checked_sub);
binary_op!(Mul, mul, checked_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-1.0)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-1.0)
    }
}

/// A column vector of two algebra elements, the ambient of the projective
/// models. Lines are right modules: `x·a = (x₁a, x₂a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pair {
    pub first: AlgebraElement,
    pub second: AlgebraElement,
}

impl Pair {
    pub fn new(first: AlgebraElement, second: AlgebraElement) -> Self {
        Pair { first, second }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        self.first.spec()
    }

    /// `(1, 0)`.
    pub fn e1(spec: AlgebraSpec) -> Self {
        Pair::new(AlgebraElement::identity(spec), AlgebraElement::zeros(spec))
    }

    /// Applies a `2 × 2` block matrix (stored as a `2n × 2n` element).
    pub fn apply(m: &AlgebraElement, x: &Pair) -> Pair {
        let [a, b, c, d] = m.split_blocks();
        Pair::new(&a * &x.first + &b * &x.second, &c * &x.first + &d * &x.second)
    }

    pub fn right_mul(&self, a: &AlgebraElement) -> Pair {
        Pair::new(&self.first * a, &self.second * a)
    }

    pub fn left_mul(&self, a: &AlgebraElement) -> Pair {
        Pair::new(a * &self.first, a * &self.second)
    }

    pub fn map(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement) -> Pair {
        Pair::new(f(&self.first), f(&self.second))
    }

    pub fn try_map(&self, f: impl Fn(&AlgebraElement) -> Result<AlgebraElement>) -> Result<Pair> {
        Ok(Pair::new(f(&self.first)?, f(&self.second)?))
    }

    pub fn add(&self, other: &Pair) -> Pair {
        Pair::new(&self.first + &other.first, &self.second + &other.second)
    }

    pub fn sub(&self, other: &Pair) -> Pair {
        Pair::new(&self.first - &other.first, &self.second - &other.second)
    }

    pub fn scale(&self, x: f64) -> Pair {
        self.map(|a| a.scale(x))
    }

    pub fn norm(&self) -> f64 {
        self.first.norm().hypot(self.second.norm())
    }

    pub fn lift(&self, target: &AlgebraSpec) -> Result<Pair> {
        self.try_map(|a| a.lift(target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::involution::ExtensionSigma;

    #[test]
    fn identity_is_neutral() {
        let spec = AlgebraSpec::quaternion_hermitian(2);
        let a = AlgebraElement::from_fn(spec, |i, j, b| (i + 2 * j + 3 * b) as f64 - 2.5);
        let id = AlgebraElement::identity(spec);
        assert_eq!(&id * &a, a);
        assert_eq!(&a * &id, a);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let spec = AlgebraSpec::real(2).complexify(ExtensionSigma::Linear);
        let i = AlgebraElement::unit(spec, Unit::I, 1.0).unwrap();
        assert_eq!(&i * &i, AlgebraElement::scalar(spec, -1.0));
    }

    #[test]
    fn j_times_k_is_i() {
        let spec = AlgebraSpec::real(1).quaternionify(ExtensionSigma::Sigma1);
        let j = AlgebraElement::unit(spec, Unit::J, 1.0).unwrap();
        let k = AlgebraElement::unit(spec, Unit::K, 1.0).unwrap();
        let i = AlgebraElement::unit(spec, Unit::I, 1.0).unwrap();
        assert_eq!(&j * &k, i);
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let a = AlgebraElement::identity(AlgebraSpec::real(2));
        let b = AlgebraElement::identity(AlgebraSpec::real(3));
        assert!(matches!(a.checked_mul(&b), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn transpose_example() {
        let spec = AlgebraSpec::real(2);
        let a = AlgebraElement::from_real_matrix(spec, &DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0])).unwrap();
        let t = AlgebraElement::from_real_matrix(spec, &DMatrix::from_row_slice(2, 2, &[1.0, 3.0, 2.0, 4.0])).unwrap();
        assert_eq!(a.sigma(), t);
    }

    #[test]
    fn symmetry_part_examples() {
        let spec = AlgebraSpec::real(2);
        let a = AlgebraElement::from_real_matrix(spec, &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let want =
            AlgebraElement::from_real_matrix(spec, &DMatrix::from_row_slice(2, 2, &[0.0, 0.5, 0.5, 0.0])).unwrap();
        let s = a.symmetry_part(&spec.sigma, 1.0);
        assert_eq!(s, want);
        assert!(s.symmetry_part(&spec.sigma, -1.0).is_zero());
        assert_eq!(s.symmetry_part(&spec.sigma, 1.0), s);
    }

    #[test]
    fn theta_examples() {
        let h = AlgebraSpec::real(1).quaternionify(ExtensionSigma::Sigma1);
        let j = AlgebraElement::unit(h, Unit::J, 1.0).unwrap();
        assert_eq!(j.theta(Unit::I).unwrap(), j);
        let c = AlgebraSpec::real(1).complexify(ExtensionSigma::Linear);
        let z = &AlgebraElement::scalar(c, 2.0) + &AlgebraElement::unit(c, Unit::I, 3.0).unwrap();
        let zbar = &AlgebraElement::scalar(c, 2.0) + &AlgebraElement::unit(c, Unit::I, -3.0).unwrap();
        assert_eq!(z.theta(Unit::I).unwrap(), zbar);
        assert!(matches!(z.theta(Unit::J), Err(Error::UnknownUnit(_))));
    }

    #[test]
    fn reduced_trace_examples() {
        let r = AlgebraSpec::real(2);
        assert_eq!(AlgebraElement::identity(r).reduced_trace(), 2.0);
        let c = r.complexify(ExtensionSigma::Linear);
        assert_eq!(AlgebraElement::unit(c, Unit::I, 1.0).unwrap().reduced_trace(), 0.0);
        let swap = AlgebraElement::from_real_matrix(r, &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert_eq!(swap.reduced_trace(), 0.0);
    }

    #[test]
    fn blocks_round_trip() {
        let spec = AlgebraSpec::complex_hermitian(4);
        let a = AlgebraElement::from_fn(spec, |i, j, b| (7 * i + 3 * j + b) as f64);
        let [p, q, r, s] = a.split_blocks();
        assert_eq!(AlgebraElement::from_blocks(&p, &q, &r, &s).unwrap(), a);
    }

    #[test]
    fn extension_parts_round_trip() {
        let spec = AlgebraSpec::complex_hermitian(2).quaternionify(ExtensionSigma::Sigma0).with_central();
        let a = AlgebraElement::from_fn(spec, |i, j, b| (3 * i + 5 * j + b) as f64 - 4.0);
        let parts: Vec<_> = (0..4).map(|e| a.ext_part(e)).collect();
        assert_eq!(AlgebraElement::from_ext_parts(spec, &parts).unwrap(), a);
        let j = AlgebraElement::unit(spec, Unit::J, 2.0).unwrap();
        assert_eq!(j.ext_part(2), AlgebraElement::scalar(spec.strip_extension(), 2.0));
    }

    #[test]
    fn lift_then_restrict_is_identity() {
        let a_spec = AlgebraSpec::complex_hermitian(2);
        let h = a_spec.quaternionify(ExtensionSigma::Sigma1).with_central();
        let a = AlgebraElement::from_fn(a_spec, |i, j, b| (i + j + b) as f64 + 0.5);
        let lifted = a.lift(&h).unwrap();
        assert_eq!(lifted.restrict(&a_spec).unwrap(), a);
    }
}
