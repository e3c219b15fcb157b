//! Scalar towers, matrix algebras with anti-involutions, and the numerical
//! kernels shared by every other module.

pub mod element;
pub mod involution;
pub mod linalg;
pub mod sample;
pub mod tower;

pub use element::{AlgebraElement, Pair};
pub use involution::{AlgebraSpec, AntiInvolution, BaseKind, ExtensionSigma, UnitSigns};
pub use linalg::{charpoly, Positivity, DEFAULT_EIG_TOL, DEFAULT_TOL};
pub use sample::{rng_from_seed, sample, sample_seeded, Constraint, SampleRng};
pub use tower::{Extension, Ground, ScalarTower, Unit};
