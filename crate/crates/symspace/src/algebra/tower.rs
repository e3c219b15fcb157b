//! Hypercomplex scalar towers.
//!
//! A scalar is a tensor product of three mutually commuting factors:
//! a ground field (ℝ, ℂ with unit `I`, or ℍ with units `I, J, K`), an
//! extension (none, ℂ with unit `i`, or ℍ with units `i, j, k`) and an
//! optional central complex unit `E` squaring to −1. Scalars are stored as
//! real coefficient arrays over the product basis, ground index outermost and
//! central index innermost.

use std::sync::OnceLock;

use nalgebra::{Complex, DMatrix};

/// Ground field of the matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ground {
    Real,
    Complex,
    Quaternion,
}

/// Imaginary units adjoined on top of the ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extension {
    None,
    Complex,
    Quaternion,
}

/// An adjoined imaginary unit that an automorphism `θ` can be attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    /// First extension unit `i`.
    I,
    /// Second extension unit `j` (quaternionic extensions only).
    J,
    /// Third extension unit `k` (quaternionic extensions only).
    K,
    /// The central unit `E`.
    Central,
}

impl Ground {
    /// Real dimension of the ground field.
    pub fn dim(self) -> usize {
        match self {
            Ground::Real => 1,
            Ground::Complex => 2,
            Ground::Quaternion => 4,
        }
    }

    fn index(self) -> usize {
        match self {
            Ground::Real => 0,
            Ground::Complex => 1,
            Ground::Quaternion => 2,
        }
    }
}

impl Extension {
    /// Real dimension of the extension factor.
    pub fn dim(self) -> usize {
        match self {
            Extension::None => 1,
            Extension::Complex => 2,
            Extension::Quaternion => 4,
        }
    }

    fn index(self) -> usize {
        match self {
            Extension::None => 0,
            Extension::Complex => 1,
            Extension::Quaternion => 2,
        }
    }
}

/// The scalar ring of a matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScalarTower {
    pub ground: Ground,
    pub extension: Extension,
    pub central: bool,
}

/// Position of a basis element inside the three tensor factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisIndex {
    pub ground: usize,
    pub ext: usize,
    pub central: usize,
}

impl ScalarTower {
    pub const fn new(ground: Ground, extension: Extension, central: bool) -> Self {
        ScalarTower { ground, extension, central }
    }

    /// Real dimension of the scalar ring.
    pub fn dim(&self) -> usize {
        self.ground.dim() * self.extension.dim() * self.central_dim()
    }

    fn central_dim(&self) -> usize {
        if self.central {
            2
        } else {
            1
        }
    }

    /// Flat position of the basis element with the given factor indices.
    pub fn flat(&self, ground: usize, ext: usize, central: usize) -> usize {
        (ground * self.extension.dim() + ext) * self.central_dim() + central
    }

    /// Inverse of [`ScalarTower::flat`].
    pub fn split(&self, flat: usize) -> BasisIndex {
        let cd = self.central_dim();
        let ed = self.extension.dim();
        BasisIndex { ground: flat / (ed * cd), ext: (flat / cd) % ed, central: flat % cd }
    }

    /// Human-readable label of a basis element, e.g. `"1"`, `"Ij"`, `"kE"`.
    pub fn label(&self, flat: usize) -> String {
        const GROUND: [&str; 4] = ["", "I", "J", "K"];
        const EXT: [&str; 4] = ["", "i", "j", "k"];
        let b = self.split(flat);
        let mut s = String::new();
        s.push_str(GROUND[b.ground]);
        s.push_str(EXT[b.ext]);
        if b.central == 1 {
            s.push('E');
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Whether `self` is obtained from `other` by adjoining units, so that
    /// `other`-scalars embed coefficient-wise into `self`-scalars.
    pub fn contains(&self, other: &ScalarTower) -> bool {
        self.ground == other.ground && self.extension >= other.extension && (self.central || !other.central)
    }

    /// Whether `unit` exists in this tower.
    pub fn has_unit(&self, unit: Unit) -> bool {
        match unit {
            Unit::I => self.extension != Extension::None,
            Unit::J | Unit::K => self.extension == Extension::Quaternion,
            Unit::Central => self.central,
        }
    }

    /// Flat index of the basis element `unit` (with trivial other factors).
    pub fn unit_index(&self, unit: Unit) -> Option<usize> {
        if !self.has_unit(unit) {
            return None;
        }
        Some(match unit {
            Unit::I => self.flat(0, 1, 0),
            Unit::J => self.flat(0, 2, 0),
            Unit::K => self.flat(0, 3, 0),
            Unit::Central => self.flat(0, 0, 1),
        })
    }

    pub(crate) fn tables(&self) -> &'static TowerTables {
        static CACHE: [OnceLock<TowerTables>; 18] = [const { OnceLock::new() }; 18];
        let key = self.ground.index() * 6 + self.extension.index() * 2 + usize::from(self.central);
        CACHE[key].get_or_init(|| TowerTables::build(*self))
    }

    /// Product of two basis elements: `(flat index, sign)`.
    pub fn basis_product(&self, p: usize, q: usize) -> (usize, f64) {
        let t = self.tables();
        t.product[p * t.dim + q]
    }
}

/// Product of quaternion units `1, i, j, k` encoded as `0..4`.
/// Restricted to `{0, 1}` it is the complex multiplication table.
fn quaternion_unit_product(a: usize, b: usize) -> (usize, f64) {
    const TABLE: [[(usize, f64); 4]; 4] = [
        [(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
        [(1, 1.0), (0, -1.0), (3, 1.0), (2, -1.0)],
        [(2, 1.0), (3, -1.0), (0, -1.0), (1, 1.0)],
        [(3, 1.0), (2, 1.0), (1, -1.0), (0, -1.0)],
    ];
    TABLE[a][b]
}

/// Precomputed per-tower data: the multiplication table and the complex
/// representation of every basis element.
pub(crate) struct TowerTables {
    pub dim: usize,
    pub product: Vec<(usize, f64)>,
    /// Size of the complex representation of the central factor.
    pub central_rep: usize,
    /// Size of the complex representation of the ground ⊗ extension part.
    pub rest_rep: usize,
    /// Complex matrix of each basis element, indexed as
    /// `central_row * rest_rep + rest_row`.
    pub reps: Vec<DMatrix<Complex<f64>>>,
}

impl TowerTables {
    fn build(tower: ScalarTower) -> Self {
        let dim = tower.dim();
        let mut product = Vec::with_capacity(dim * dim);
        for p in 0..dim {
            let bp = tower.split(p);
            for q in 0..dim {
                let bq = tower.split(q);
                let (g, sg) = quaternion_unit_product(bp.ground, bq.ground);
                let (e, se) = quaternion_unit_product(bp.ext, bq.ext);
                let (c, sc) = quaternion_unit_product(bp.central, bq.central);
                product.push((tower.flat(g, e, c), sg * se * sc));
            }
        }

        // The first complex factor (in the order ground, extension, central)
        // becomes the scalar i; every later complex factor gets the
        // two-dimensional splitting representation diag(i, -i).
        let mut complex_seen = false;
        let mut factor_reps = |kind: usize| -> Vec<DMatrix<Complex<f64>>> {
            match kind {
                1 => vec![DMatrix::from_element(1, 1, Complex::new(1.0, 0.0))],
                2 if !complex_seen => {
                    complex_seen = true;
                    vec![
                        DMatrix::from_element(1, 1, Complex::new(1.0, 0.0)),
                        DMatrix::from_element(1, 1, Complex::new(0.0, 1.0)),
                    ]
                }
                2 => vec![
                    DMatrix::identity(2, 2),
                    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                        Complex::new(0.0, 1.0),
                        Complex::new(0.0, -1.0),
                    ])),
                ],
                _ => quaternion_reps(),
            }
        };
        let ground_reps = factor_reps(tower.ground.dim());
        let ext_reps = factor_reps(tower.extension.dim());
        let central_reps = factor_reps(tower.central_dim());

        let rest_rep = ground_reps[0].nrows() * ext_reps[0].nrows();
        let central_rep = central_reps[0].nrows();
        let reps = (0..dim)
            .map(|flat| {
                let b = tower.split(flat);
                let rest = ground_reps[b.ground].kronecker(&ext_reps[b.ext]);
                central_reps[b.central].kronecker(&rest)
            })
            .collect();
        TowerTables { dim, product, central_rep, rest_rep, reps }
    }
}

/// The standard complex 2×2 matrices of `1, i, j, k`; a quaternion
/// `a + bi + cj + dk` maps to `[[a+bi, c+di], [-c+di, a-bi]]`.
fn quaternion_reps() -> Vec<DMatrix<Complex<f64>>> {
    let c = |re: f64, im: f64| Complex::new(re, im);
    vec![
        DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]),
        DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]),
        DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0)]),
    ]
}
