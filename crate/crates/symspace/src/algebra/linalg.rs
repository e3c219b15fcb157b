//! Numerical kernels: real and complex representations, inverse,
//! exponential, positivity, square roots and characteristic polynomials.

use nalgebra::{Complex, DMatrix, DVector};

use super::element::{AlgebraElement, Pair};
use super::involution::{AlgebraSpec, AntiInvolution};
use crate::error::{Error, Result};

/// Default tolerance for membership residuals.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default tolerance for eigenvalue sign tests.
pub const DEFAULT_EIG_TOL: f64 = 1e-7;
/// Reciprocal condition number below which an element counts as singular.
pub const SINGULAR_RCOND: f64 = 1e-12;

/// Outcome of a cone membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    NonNegative,
    Neither,
}

/// Matrix of left multiplication by the matrix `a` on the real vector space
/// of `n`-columns of scalars.
///
/// Block `(i, j)` is the left-regular matrix of the scalar `a_ij`, so the
/// representation has size `n·s` where `s` is the real dimension of the
/// tower. Column `j·s` of the result, read blockwise, recovers column `j`
/// of `a`.
pub fn real_rep(a: &AlgebraElement) -> DMatrix<f64> {
    let n = a.n();
    let tower = a.spec().tower;
    let tables = tower.tables();
    let d = tables.dim;
    let mut out = DMatrix::zeros(n * d, n * d);
    for i in 0..n {
        for j in 0..n {
            let x = a.entry(i, j);
            for (p, &xp) in x.iter().enumerate() {
                if xp == 0.0 {
                    continue;
                }
                for q in 0..d {
                    let (r, s) = tables.product[p * d + q];
                    out[(i * d + r, j * d + q)] += s * xp;
                }
            }
        }
    }
    out
}

/// Inverse of [`real_rep`] for matrices in its image.
pub fn from_real_rep(spec: AlgebraSpec, m: &DMatrix<f64>) -> AlgebraElement {
    let d = spec.tower.dim();
    AlgebraElement::from_fn(spec, |i, j, b| m[(i * d + b, j * d)])
}

/// Reciprocal 1-norm condition number estimate of a square real matrix and
/// its inverse.
fn invert_with_rcond(m: DMatrix<f64>) -> Result<DMatrix<f64>> {
    let norm1 = |x: &DMatrix<f64>| x.column_iter().map(|c| c.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let a_norm = norm1(&m);
    let inv = m.lu().try_inverse().ok_or(Error::Singular { rcond: 0.0 })?;
    let rcond = 1.0 / (a_norm * norm1(&inv));
    if !rcond.is_finite() || rcond < SINGULAR_RCOND {
        return Err(Error::Singular { rcond: if rcond.is_finite() { rcond } else { 0.0 } });
    }
    Ok(inv)
}

impl AlgebraElement {
    /// Multiplicative inverse through the real representation.
    pub fn inv(&self) -> Result<AlgebraElement> {
        let inv = invert_with_rcond(real_rep(self))?;
        Ok(from_real_rep(*self.spec(), &inv))
    }

    /// Matrix exponential through the real representation.
    pub fn exp(&self) -> AlgebraElement {
        from_real_rep(*self.spec(), &real_rep(self).exp())
    }

    /// The complex matrix image under the canonical faithful embedding.
    ///
    /// The central unit, when present, splits the image into two diagonal
    /// blocks; inside each block every scalar entry becomes a square block
    /// of the ground-and-extension representation.
    pub fn embed_complex(&self) -> DMatrix<Complex<f64>> {
        let n = self.n();
        let tables = self.spec().tower.tables();
        let (cm, rm) = (tables.central_rep, tables.rest_rep);
        let m = cm * rm;
        let size = n * m;
        let mut out = DMatrix::from_element(size, size, Complex::new(0.0, 0.0));
        let index = |c: usize, i: usize, r: usize| (c * n + i) * rm + r;
        for i in 0..n {
            for j in 0..n {
                for (b, &x) in self.entry(i, j).iter().enumerate() {
                    if x == 0.0 {
                        continue;
                    }
                    let rep = &tables.reps[b];
                    for cr in 0..cm {
                        for rr in 0..rm {
                            for cc in 0..cm {
                                for rc in 0..rm {
                                    let v = rep[(cr * rm + rr, cc * rm + rc)];
                                    if v != Complex::new(0.0, 0.0) {
                                        out[(index(cr, i, rr), index(cc, j, rc))] += v * x;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Projects a complex matrix back onto the algebra, the left inverse of
    /// [`AlgebraElement::embed_complex`].
    pub fn pull_back(spec: AlgebraSpec, x: &DMatrix<Complex<f64>>) -> AlgebraElement {
        let n = spec.n;
        let tables = spec.tower.tables();
        let (cm, rm) = (tables.central_rep, tables.rest_rep);
        let m = cm * rm;
        let index = |c: usize, i: usize, r: usize| (c * n + i) * rm + r;
        AlgebraElement::from_fn(spec, |i, j, b| {
            let rep = &tables.reps[b];
            let mut acc = 0.0;
            for cr in 0..cm {
                for rr in 0..rm {
                    for cc in 0..cm {
                        for rc in 0..rm {
                            let r = rep[(cr * rm + rr, cc * rm + rc)];
                            let v = x[(index(cr, i, rr), index(cc, j, rc))];
                            acc += (r.conj() * v).re;
                        }
                    }
                }
            }
            acc / m as f64
        })
    }

    /// Cone membership with respect to the Hermitian involution `sigma`.
    pub fn positivity(&self, sigma: &AntiInvolution, tol: f64) -> Result<Positivity> {
        let spec = self.spec();
        if !sigma.is_hermitian_on(&spec.tower) {
            return Err(Error::NotHermitianPair(sigma.name()));
        }
        let sym_residual = self.distance(&self.apply_sigma(sigma));
        if sym_residual > DEFAULT_TOL * (1.0 + self.norm()) {
            return Ok(Positivity::Neither);
        }
        let eig = hermitian_eigenvalues(&self.embed_complex());
        let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(if min > tol {
            Positivity::Positive
        } else if min >= -tol {
            Positivity::NonNegative
        } else {
            Positivity::Neither
        })
    }

    /// Smallest eigenvalue of the Hermitian part of the complex image.
    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.embed_complex()).iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `positivity(σ, DEFAULT_EIG_TOL) == Positive` using the spec's own
    /// involution.
    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.positivity(&self.spec().sigma, DEFAULT_EIG_TOL)? == Positivity::Positive)
    }

    /// The positive square root of a positive element.
    pub fn sqrt_positive(&self, sigma: &AntiInvolution) -> Result<AlgebraElement> {
        self.positive_power(sigma, 0.5)
    }

    /// `a^p` for a positive element, by spectral calculus in the complex
    /// image.
    pub fn positive_power(&self, sigma: &AntiInvolution, p: f64) -> Result<AlgebraElement> {
        if self.positivity(sigma, DEFAULT_EIG_TOL)? != Positivity::Positive {
            return Err(Error::NotPositive(format!("minimum eigenvalue {:.3e}", self.min_eigenvalue())));
        }
        let (values, v) = hermitian_eigen(&self.embed_complex())?;
        let d = DVector::from_iterator(values.len(), values.iter().map(|&l| Complex::new(l.powf(p), 0.0)));
        let y = &v * DMatrix::from_diagonal(&d) * v.adjoint();
        Ok(AlgebraElement::pull_back(*self.spec(), &y))
    }
}

fn hermitianize(x: &DMatrix<Complex<f64>>) -> DMatrix<Complex<f64>> {
    (x + x.adjoint()).scale(0.5)
}

fn to_faer<T: Copy + faer::traits::ComplexField>(m: &DMatrix<T>) -> faer::Mat<T> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer<T: Copy + nalgebra::Scalar>(m: faer::MatRef<'_, T>) -> DMatrix<T> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigenvalues (non-decreasing) and unitary eigenvectors of the Hermitian
/// part of a complex matrix.
pub fn hermitian_eigen(x: &DMatrix<Complex<f64>>) -> Result<(Vec<f64>, DMatrix<Complex<f64>>)> {
    let eig = to_faer(&hermitianize(x))
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::NotRegular(format!("Hermitian eigensolver failed: {e:?}")))?;
    let values = eig.S().column_vector().iter().map(|l| l.re).collect();
    Ok((values, from_faer(eig.U())))
}

/// Eigenvalues of the Hermitian part of a complex matrix, non-decreasing.
pub fn hermitian_eigenvalues(x: &DMatrix<Complex<f64>>) -> Vec<f64> {
    to_faer(&hermitianize(x))
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .expect("the Hermitian eigensolver converges on finite input")
}

/// Singular value decomposition `m = U·diag(s)·Vᵀ` with square `U` and `V`
/// and non-increasing singular values.
pub struct Svd {
    pub u: DMatrix<f64>,
    pub singular_values: Vec<f64>,
    pub v: DMatrix<f64>,
}

pub fn svd(m: &DMatrix<f64>) -> Result<Svd> {
    let svd = to_faer(m).svd().map_err(|e| Error::NotRegular(format!("SVD failed: {e:?}")))?;
    let singular_values = svd.S().column_vector().iter().copied().collect();
    Ok(Svd { u: from_faer(svd.U()), singular_values, v: from_faer(svd.V()) })
}

impl Svd {
    fn cutoff(&self, rel_tol: f64) -> f64 {
        rel_tol * self.singular_values.first().copied().unwrap_or(0.0).max(1.0)
    }

    /// Right singular vectors whose singular value is at most `rel_tol`
    /// times the largest (or `1`), including those beyond the row count.
    pub fn kernel(&self, rel_tol: f64) -> Vec<DVector<f64>> {
        let cut = self.cutoff(rel_tol);
        (0..self.v.ncols())
            .filter(|&k| self.singular_values.get(k).is_none_or(|&s| s <= cut))
            .map(|k| self.v.column(k).into_owned())
            .collect()
    }

    /// Minimum-norm least-squares solution, dropping singular values below
    /// the relative cutoff.
    pub fn solve(&self, rhs: &DVector<f64>, rel_tol: f64) -> DVector<f64> {
        let cut = self.cutoff(rel_tol);
        let mut x = DVector::zeros(self.v.nrows());
        for (k, &s) in self.singular_values.iter().enumerate() {
            if s > cut {
                let coeff = self.u.column(k).dot(rhs) / s;
                x += self.v.column(k) * coeff;
            }
        }
        x
    }
}

/// Coefficients `c_1, …, c_N` of the monic characteristic polynomial
/// `λ^N + c_1 λ^{N−1} + … + c_N`, computed by the Faddeev–LeVerrier
/// recursion.
pub fn charpoly(x: &DMatrix<Complex<f64>>) -> Vec<Complex<f64>> {
    let n = x.nrows();
    let id = DMatrix::<Complex<f64>>::identity(n, n);
    let mut coeffs = Vec::with_capacity(n);
    let mut m = DMatrix::<Complex<f64>>::zeros(n, n);
    let mut c = Complex::new(1.0, 0.0);
    for k in 1..=n {
        m = x * &m + &id * c;
        let xm = x * &m;
        c = -xm.trace() / k as f64;
        coeffs.push(c);
    }
    coeffs
}

/// Matrix of a real-linear map given by its action on the standard basis.
pub fn linear_map_matrix(in_dim: usize, f: impl Fn(&[f64]) -> Vec<f64>) -> DMatrix<f64> {
    let mut cols = Vec::with_capacity(in_dim);
    let mut e = vec![0.0; in_dim];
    for k in 0..in_dim {
        e[k] = 1.0;
        cols.push(DVector::from_vec(f(&e)));
        e[k] = 0.0;
    }
    DMatrix::from_columns(&cols)
}

/// Least-squares solution `a` of `x·a = y` over the matrix algebra, with
/// the relative residual `‖x·a − y‖ / max(‖y‖, 1)`.
pub fn solve_right(x: &Pair, y: &Pair) -> Result<(AlgebraElement, f64)> {
    let spec = *x.spec();
    let m = linear_map_matrix(spec.dim(), |c| {
        let a = AlgebraElement::from_coefficients(spec, c.to_vec()).expect("dimension matches");
        let r = x.right_mul(&a);
        [r.first.coefficients(), r.second.coefficients()].concat()
    });
    let rhs = DVector::from_vec([y.first.coefficients(), y.second.coefficients()].concat());
    let sol = svd(&m)?.solve(&rhs, 1e-12);
    let a = AlgebraElement::from_coefficients(spec, sol.iter().copied().collect())?;
    let residual = x.right_mul(&a).sub(y).norm() / y.norm().max(1.0);
    Ok((a, residual))
}

/// Smallest singular value of the right-multiplication map `a ↦ x·a`
/// relative to the largest, a measure of how far `x` is from singular.
pub fn regularity(x: &Pair) -> f64 {
    let spec = *x.spec();
    let m = linear_map_matrix(spec.dim(), |c| {
        let a = AlgebraElement::from_coefficients(spec, c.to_vec()).expect("dimension matches");
        let r = x.right_mul(&a);
        [r.first.coefficients(), r.second.coefficients()].concat()
    });
    let sv = to_faer(&m).singular_values().expect("the SVD converges on finite input");
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        0.0
    } else {
        sv.iter().copied().fold(f64::INFINITY, f64::min) / max
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::involution::ExtensionSigma;
    use crate::algebra::tower::Unit;

    fn real2(v: [f64; 4]) -> AlgebraElement {
        AlgebraElement::from_real_matrix(AlgebraSpec::real(2), &DMatrix::from_row_slice(2, 2, &v)).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let spec = AlgebraSpec::real(2);
        let id = AlgebraElement::identity(spec);
        assert_eq!(id.inv().unwrap(), id);
        let two = AlgebraElement::scalar(spec, 2.0);
        assert!(two.inv().unwrap().distance(&AlgebraElement::scalar(spec, 0.5)) < 1e-15);
        let h = AlgebraSpec::real(1).quaternionify(ExtensionSigma::Sigma1);
        let j = AlgebraElement::unit(h, Unit::J, 1.0).unwrap();
        assert!(j.inv().unwrap().distance(&j.scale(-1.0)) < 1e-15);
        assert!(matches!(AlgebraElement::zeros(spec).inv(), Err(Error::Singular { .. })));
    }

    #[test]
    fn exponential_of_rotation_generator() {
        let t = 0.7_f64;
        let e = real2([0.0, t, -t, 0.0]).exp();
        assert!(e.distance(&real2([t.cos(), t.sin(), -t.sin(), t.cos()])) < 1e-14);
    }

    #[test]
    fn quaternion_embedding_matches_standard_form() {
        let h = AlgebraSpec::real(1).quaternionify(ExtensionSigma::Sigma1);
        let q = AlgebraElement::from_coefficients(h, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let c = |re, im| Complex::new(re, im);
        let want = DMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), c(3.0, 4.0), c(-3.0, 4.0), c(1.0, -2.0)]);
        assert!((q.embed_complex() - want).norm() < 1e-15);
    }

    #[test]
    fn central_unit_splits_into_conjugate_blocks() {
        let spec = AlgebraSpec::real(1).complexify(ExtensionSigma::Linear).with_central();
        // a1 + a2 E with a1 = 1 + 2i and a2 = 3 - i
        let e = spec.tower.unit_index(Unit::Central).unwrap();
        let i = spec.tower.unit_index(Unit::I).unwrap();
        let ie = spec.tower.flat(0, 1, 1);
        let mut data = vec![0.0; 4];
        data[0] = 1.0;
        data[i] = 2.0;
        data[e] = 3.0;
        data[ie] = -1.0;
        let x = AlgebraElement::from_coefficients(spec, data).unwrap();
        let m = x.embed_complex();
        // E becomes i on the first block and -i on the second one.
        let c = |re, im| Complex::new(re, im);
        assert!((m[(0, 0)] - (c(1.0, 2.0) + c(0.0, 1.0) * c(3.0, -1.0))).norm() < 1e-15);
        assert!((m[(1, 1)] - (c(1.0, 2.0) - c(0.0, 1.0) * c(3.0, -1.0))).norm() < 1e-15);
    }

    #[test]
    fn pull_back_inverts_embedding() {
        let base = AlgebraSpec::quaternion_hermitian(2);
        let spec = base.complexify(ExtensionSigma::Conjugate).with_central();
        let a = AlgebraElement::from_fn(spec, |i, j, b| ((i * 5 + j * 3 + b * 7) % 11) as f64 - 5.0);
        let back = AlgebraElement::pull_back(spec, &a.embed_complex());
        assert!(back.distance(&a) < 1e-13);
    }

    #[test]
    fn positivity_examples() {
        let s = AlgebraSpec::real(2).sigma;
        assert_eq!(real2([1.0, 0.0, 0.0, 1.0]).positivity(&s, 1e-7).unwrap(), Positivity::Positive);
        assert_eq!(real2([1.0, 2.0, 2.0, 1.0]).positivity(&s, 1e-7).unwrap(), Positivity::Neither);
        assert_eq!(real2([2.0, 1.0, 1.0, 2.0]).positivity(&s, 1e-7).unwrap(), Positivity::Positive);
        assert_eq!(real2([1.0, 1.0, 1.0, 1.0]).positivity(&s, 1e-7).unwrap(), Positivity::NonNegative);
        assert_eq!(real2([1.0, 1.0, 0.0, 1.0]).positivity(&s, 1e-7).unwrap(), Positivity::Neither);
        let c = AlgebraSpec::real(2).complexify(ExtensionSigma::Linear);
        let err = AlgebraElement::identity(c).positivity(&c.sigma, 1e-7);
        assert!(matches!(err, Err(Error::NotHermitianPair(_))));
    }

    #[test]
    fn square_root_examples() {
        let s = AlgebraSpec::real(2).sigma;
        let id = real2([1.0, 0.0, 0.0, 1.0]);
        assert!(id.sqrt_positive(&s).unwrap().distance(&id) < 1e-14);
        let d = real2([4.0, 0.0, 0.0, 9.0]).sqrt_positive(&s).unwrap();
        assert!(d.distance(&real2([2.0, 0.0, 0.0, 3.0])) < 1e-14);
        let a = real2([2.0, 1.0, 1.0, 2.0]);
        let r = a.sqrt_positive(&s).unwrap();
        // Eigen oracle: eigenvalues 3 and 1 with eigenvectors (1,1) and (1,-1).
        let (p, q) = (3f64.sqrt(), 1.0);
        let want = real2([(p + q) / 2.0, (p - q) / 2.0, (p - q) / 2.0, (p + q) / 2.0]);
        assert!(r.distance(&want) < 1e-13);
        assert!((&r * &r).distance(&a) < 1e-12);
        assert!(matches!(real2([1.0, 2.0, 2.0, 1.0]).sqrt_positive(&s), Err(Error::NotPositive(_))));
    }

    #[test]
    fn charpoly_of_diagonal() {
        let c = |re| Complex::new(re, 0.0);
        let x = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(2.0), c(3.0)]));
        let p = charpoly(&x);
        let want = [-6.0, 11.0, -6.0];
        for (a, b) in p.iter().zip(want) {
            assert!((a - c(b)).norm() < 1e-12);
        }
    }

    #[test]
    fn right_solve_recovers_multiplier() {
        let spec = AlgebraSpec::real(1).complexify(ExtensionSigma::Linear);
        let i = AlgebraElement::unit(spec, Unit::I, 1.0).unwrap();
        let one = AlgebraElement::identity(spec);
        let x = Pair::new(one.clone(), -&i);
        let y = Pair::new(i.clone(), one.clone());
        let (a, res) = solve_right(&x, &y).unwrap();
        assert!(res < 1e-14);
        assert!(a.distance(&i) < 1e-14);
    }
}
