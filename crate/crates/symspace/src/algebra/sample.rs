//! Deterministic random sampling of algebra elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::AlgebraElement;
use super::involution::AlgebraSpec;

/// Constraint imposed on a sampled element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    Free,
    SigmaSym,
    SigmaAntiSym,
    SigmaPositive,
    Invertible,
}

/// The random generator used throughout the crate.
pub type SampleRng = ChaCha8Rng;

/// A generator seeded from a `u64`.
pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An element with every coefficient uniform in `[-1, 1]`.
pub fn random_element(spec: AlgebraSpec, rng: &mut impl Rng) -> AlgebraElement {
    let data = (0..spec.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    AlgebraElement::from_coefficients(spec, data).expect("dimension matches")
}

/// An invertible element with reciprocal condition number at least `1e-3`.
pub fn random_invertible(spec: AlgebraSpec, rng: &mut impl Rng) -> AlgebraElement {
    loop {
        let x = random_element(spec, rng).scale(0.5);
        let shift = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let g = x.add_scalar(shift);
        if let Ok(inv) = g.inv() {
            if g.norm() * inv.norm() < 1e3 {
                return g;
            }
        }
    }
}

/// Samples an element satisfying `constraint` with respect to the spec's
/// own involution.
pub fn sample(spec: AlgebraSpec, constraint: Constraint, rng: &mut impl Rng) -> AlgebraElement {
    let sigma = spec.sigma;
    match constraint {
        Constraint::Free => random_element(spec, rng),
        Constraint::SigmaSym => random_element(spec, rng).symmetry_part(&sigma, 1.0),
        Constraint::SigmaAntiSym => random_element(spec, rng).symmetry_part(&sigma, -1.0),
        Constraint::Invertible => random_invertible(spec, rng),
        Constraint::SigmaPositive => {
            let g = random_invertible(spec, rng);
            let p = &g * &g.apply_sigma(&sigma);
            // Exact symmetry despite rounding in the product.
            p.symmetry_part(&sigma, 1.0)
        }
    }
}

/// [`sample`] with a fresh generator seeded by `seed`.
pub fn sample_seeded(spec: AlgebraSpec, constraint: Constraint, seed: u64) -> AlgebraElement {
    sample(spec, constraint, &mut rng_from_seed(seed))
}
