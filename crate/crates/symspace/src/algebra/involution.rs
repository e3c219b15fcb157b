//! Anti-involutions and algebra specifications.
//!
//! Every supported anti-involution acts as `σ(a)_{rs} = τ(a_{sr})`, where `τ`
//! multiplies each basis scalar by a sign. The sign of a basis element is the
//! product of the signs of its factor units, so `τ` is fixed by the sign of
//! each ground unit (chosen by [`BaseKind`]) and by the [`UnitSigns`] of the
//! adjoined units.

use std::fmt;

use super::tower::{Extension, Ground, ScalarTower};
use crate::error::{Error, Result};

/// How the anti-involution acts on the ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// Plain transpose; ground units are fixed.
    Transpose,
    /// Transpose composed with complex conjugation of the ground field.
    ConjTranspose,
    /// Quaternionic ground with `I ↦ I`, `J ↦ J`, `K ↦ −K`.
    QuatSigma0,
    /// Quaternionic ground with quaternion conjugation.
    QuatSigma1,
}

impl BaseKind {
    fn ground_signs(self) -> [f64; 4] {
        match self {
            BaseKind::Transpose => [1.0; 4],
            BaseKind::ConjTranspose => [1.0, -1.0, 1.0, 1.0],
            BaseKind::QuatSigma0 => [1.0, 1.0, 1.0, -1.0],
            BaseKind::QuatSigma1 => [1.0, -1.0, -1.0, -1.0],
        }
    }

    fn supports(self, ground: Ground) -> bool {
        matches!(
            (self, ground),
            (BaseKind::Transpose, Ground::Real)
                | (BaseKind::Transpose, Ground::Complex)
                | (BaseKind::ConjTranspose, Ground::Complex)
                | (BaseKind::QuatSigma0, Ground::Quaternion)
                | (BaseKind::QuatSigma1, Ground::Quaternion)
        )
    }

    fn name(self) -> &'static str {
        match self {
            BaseKind::Transpose => "T",
            BaseKind::ConjTranspose => "conjT",
            BaseKind::QuatSigma0 => "sigma0",
            BaseKind::QuatSigma1 => "sigma1",
        }
    }
}

/// Signs by which the adjoined units are multiplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitSigns {
    pub i: i8,
    pub j: i8,
    pub k: i8,
    pub central: i8,
}

/// The named sign patterns on an adjoined extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionSigma {
    /// No extension units.
    Trivial,
    /// Complex extension, `i ↦ i`.
    Linear,
    /// Complex extension, `i ↦ −i`.
    Conjugate,
    /// Quaternionic extension, `(i, j, k) ↦ (i, j, −k)`.
    Sigma0,
    /// Quaternionic extension, quaternion conjugation.
    Sigma1,
    /// Quaternionic extension, `(i, j, k) ↦ (−i, j, k)`.
    Sigma2,
    /// Quaternionic extension, `(i, j, k) ↦ (i, −j, k)`.
    Sigma3,
}

impl ExtensionSigma {
    fn signs(self) -> (i8, i8, i8) {
        match self {
            ExtensionSigma::Trivial => (1, 1, 1),
            ExtensionSigma::Linear => (1, 1, 1),
            ExtensionSigma::Conjugate => (-1, 1, 1),
            ExtensionSigma::Sigma0 => (1, 1, -1),
            ExtensionSigma::Sigma1 => (-1, -1, -1),
            ExtensionSigma::Sigma2 => (-1, 1, 1),
            ExtensionSigma::Sigma3 => (1, -1, 1),
        }
    }

    fn extension(self) -> Extension {
        match self {
            ExtensionSigma::Trivial => Extension::None,
            ExtensionSigma::Linear | ExtensionSigma::Conjugate => Extension::Complex,
            _ => Extension::Quaternion,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ExtensionSigma::Trivial => "",
            ExtensionSigma::Linear => "c",
            ExtensionSigma::Conjugate => "cbar",
            ExtensionSigma::Sigma0 => "h0",
            ExtensionSigma::Sigma1 => "h1",
            ExtensionSigma::Sigma2 => "h2",
            ExtensionSigma::Sigma3 => "h3",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "c" => ExtensionSigma::Linear,
            "cbar" => ExtensionSigma::Conjugate,
            "h0" => ExtensionSigma::Sigma0,
            "h1" => ExtensionSigma::Sigma1,
            "h2" => ExtensionSigma::Sigma2,
            "h3" => ExtensionSigma::Sigma3,
            _ => return None,
        })
    }
}

/// An anti-involution of a matrix algebra over a scalar tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AntiInvolution {
    pub base: BaseKind,
    pub ext: ExtensionSigma,
    /// Sign of the central unit (ignored when the tower has none).
    pub central_sign: i8,
}

impl AntiInvolution {
    pub const fn new(base: BaseKind, ext: ExtensionSigma, central_sign: i8) -> Self {
        AntiInvolution { base, ext, central_sign }
    }

    /// The involution on the ground algebra with no extension units.
    pub const fn base(base: BaseKind) -> Self {
        AntiInvolution { base, ext: ExtensionSigma::Trivial, central_sign: 1 }
    }

    /// Sign of every extension unit.
    pub fn unit_signs(&self) -> UnitSigns {
        let (i, j, k) = self.ext.signs();
        UnitSigns { i, j, k, central: self.central_sign }
    }

    /// Sign applied to each basis element of `tower`.
    pub fn basis_signs(&self, tower: &ScalarTower) -> Vec<f64> {
        let g = self.base.ground_signs();
        let (i, j, k) = self.ext.signs();
        let e = [1.0, f64::from(i), f64::from(j), f64::from(k)];
        let c = [1.0, f64::from(self.central_sign)];
        (0..tower.dim())
            .map(|f| {
                let b = tower.split(f);
                g[b.ground] * e[b.ext] * c[b.central]
            })
            .collect()
    }

    /// Whether every imaginary unit is negated, which makes the pair
    /// Hermitian and sends `σ` to the conjugate transpose under the
    /// complex embedding.
    pub fn is_hermitian_on(&self, tower: &ScalarTower) -> bool {
        self.basis_signs(tower).iter().enumerate().all(|(f, &s)| {
            let b = tower.split(f);
            let units = usize::from(b.ground != 0) + usize::from(b.ext != 0) + b.central;
            s == if units.is_multiple_of(2) { 1.0 } else { -1.0 }
        })
    }

    /// Stable textual name, e.g. `"T"`, `"T+cbar"`, `"sigma1+h0"`.
    pub fn name(&self) -> String {
        let mut s = self.base.name().to_string();
        if self.ext != ExtensionSigma::Trivial {
            s.push('+');
            s.push_str(self.ext.name());
        }
        if self.central_sign < 0 {
            s.push_str("+Eneg");
        }
        s
    }

    /// Parses the output of [`AntiInvolution::name`].
    pub fn from_name(name: &str) -> Result<Self> {
        let mut parts = name.split('+');
        let base = match parts.next() {
            Some("T") => BaseKind::Transpose,
            Some("conjT") => BaseKind::ConjTranspose,
            Some("sigma0") => BaseKind::QuatSigma0,
            Some("sigma1") => BaseKind::QuatSigma1,
            _ => return Err(Error::UnsupportedSpec(format!("unknown involution name {name:?}"))),
        };
        let mut ext = ExtensionSigma::Trivial;
        let mut central_sign = 1;
        for part in parts {
            if part == "Eneg" {
                central_sign = -1;
            } else if let Some(e) = ExtensionSigma::from_name(part) {
                ext = e;
            } else {
                return Err(Error::UnsupportedSpec(format!("unknown involution name {name:?}")));
            }
        }
        Ok(AntiInvolution { base, ext, central_sign })
    }
}

/// A matrix algebra `Mat_n(S)` over a scalar tower `S` together with its
/// distinguished anti-involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub n: usize,
    pub tower: ScalarTower,
    pub sigma: AntiInvolution,
}

impl AlgebraSpec {
    /// Validates the (tower, involution) combination.
    pub fn new(n: usize, tower: ScalarTower, sigma: AntiInvolution) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedSpec("matrix size must be positive".into()));
        }
        if !sigma.base.supports(tower.ground) {
            return Err(Error::UnsupportedSpec(format!(
                "involution {} does not act on ground {:?}",
                sigma.name(),
                tower.ground
            )));
        }
        if sigma.ext.extension() != tower.extension {
            return Err(Error::UnsupportedSpec(format!(
                "involution {} does not match extension {:?}",
                sigma.name(),
                tower.extension
            )));
        }
        if sigma.central_sign.abs() != 1 || (!tower.central && sigma.central_sign != 1) {
            return Err(Error::UnsupportedSpec("invalid central sign".into()));
        }
        Ok(AlgebraSpec { n, tower, sigma })
    }

    /// `(Mat_n(ℝ), transpose)`.
    pub fn real(n: usize) -> Self {
        Self::ground(n, Ground::Real, BaseKind::Transpose)
    }

    /// `(Mat_n(ℂ), conjugate transpose)`.
    pub fn complex_hermitian(n: usize) -> Self {
        Self::ground(n, Ground::Complex, BaseKind::ConjTranspose)
    }

    /// `(Mat_n(ℍ), quaternionic conjugate transpose)`.
    pub fn quaternion_hermitian(n: usize) -> Self {
        Self::ground(n, Ground::Quaternion, BaseKind::QuatSigma1)
    }

    /// A ground algebra with no adjoined units.
    ///
    /// # Panics
    /// If `base` does not act on `ground`.
    pub fn ground(n: usize, ground: Ground, base: BaseKind) -> Self {
        Self::new(n, ScalarTower::new(ground, Extension::None, false), AntiInvolution::base(base))
            .expect("invalid ground algebra")
    }

    pub fn dim(&self) -> usize {
        self.n * self.n * self.tower.dim()
    }

    /// The same algebra with a different matrix size.
    pub fn with_n(&self, n: usize) -> Self {
        AlgebraSpec { n, ..*self }
    }

    /// The same algebra tagged with another involution sign pattern on the
    /// adjoined units.
    pub fn with_ext_sigma(&self, ext: ExtensionSigma) -> Self {
        AlgebraSpec { sigma: AntiInvolution { ext, ..self.sigma }, ..*self }
    }

    /// The ground part: extension and central units dropped.
    pub fn ground_part(&self) -> Self {
        AlgebraSpec {
            n: self.n,
            tower: ScalarTower::new(self.tower.ground, Extension::None, false),
            sigma: AntiInvolution::base(self.sigma.base),
        }
    }

    /// `A_ℂ = A ⊗ ℂ{i}` with the given sign pattern on `i`.
    pub fn complexify(&self, ext: ExtensionSigma) -> Self {
        debug_assert!(matches!(ext, ExtensionSigma::Linear | ExtensionSigma::Conjugate));
        AlgebraSpec {
            n: self.n,
            tower: ScalarTower::new(self.tower.ground, Extension::Complex, self.tower.central),
            sigma: AntiInvolution { ext, ..self.sigma },
        }
    }

    /// `A_ℍ = A ⊗ ℍ{i, j, k}` with the given sign pattern.
    pub fn quaternionify(&self, ext: ExtensionSigma) -> Self {
        debug_assert!(matches!(
            ext,
            ExtensionSigma::Sigma0 | ExtensionSigma::Sigma1 | ExtensionSigma::Sigma2 | ExtensionSigma::Sigma3
        ));
        AlgebraSpec {
            n: self.n,
            tower: ScalarTower::new(self.tower.ground, Extension::Quaternion, self.tower.central),
            sigma: AntiInvolution { ext, ..self.sigma },
        }
    }

    /// The same algebra with the extension units dropped (the central unit,
    /// if any, is kept).
    pub fn strip_extension(&self) -> Self {
        AlgebraSpec {
            n: self.n,
            tower: ScalarTower::new(self.tower.ground, Extension::None, self.tower.central),
            sigma: AntiInvolution { ext: ExtensionSigma::Trivial, ..self.sigma },
        }
    }

    /// Adjoins the central unit, extended linearly (`E ↦ E`).
    pub fn with_central(&self) -> Self {
        AlgebraSpec {
            tower: ScalarTower { central: true, ..self.tower },
            sigma: AntiInvolution { central_sign: 1, ..self.sigma },
            ..*self
        }
    }

    /// Whether the distinguished involution is Hermitian, i.e. negates every
    /// imaginary unit.
    pub fn is_hermitian(&self) -> bool {
        self.sigma.is_hermitian_on(&self.tower)
    }

    /// Whether elements of `self` and `other` can be combined arithmetically:
    /// same size and the same scalar tower. The involution tag may differ.
    pub fn same_algebra(&self, other: &AlgebraSpec) -> bool {
        self.n == other.n && self.tower == other.tower
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mat_{}({:?}/{:?}{}) with {}",
            self.n,
            self.tower.ground,
            self.tower.extension,
            if self.tower.central { "/E" } else { "" },
            self.sigma.name()
        )
    }
}
