use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{enumerate_sector, Sector};
use crate::algebra::{GaussianRational, HbarSeries, Observable};

/// Largest numerator magnitude and denominator of generated coefficients.
pub const COEFF_BOUND: i64 = 9;
/// Largest hbar-degree of generated coefficients.
pub const MAX_HBAR_DEGREE: u32 = 2;

/// Deterministic pseudo-random observable over all monomials of degree at
/// most `max_degree`.
pub fn random_observable(seed: u64, max_degree: u32, max_terms: usize) -> Observable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_observable_with(&mut rng, Sector::All, max_degree, max_terms)
}

/// Like [`random_observable`], restricted to one sector.
pub fn random_sector_observable(
    seed: u64,
    sector: Sector,
    max_degree: u32,
    max_terms: usize,
) -> Observable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_observable_with(&mut rng, sector, max_degree, max_terms)
}

/// Draws between 1 and `max_terms` distinct monomials, each with one nonzero
/// Gaussian-rational coefficient at a single hbar-degree. Distinct monomials
/// mean nothing cancels, so the result is never zero.
pub fn random_observable_with<R: Rng + ?Sized>(
    rng: &mut R,
    sector: Sector,
    max_degree: u32,
    max_terms: usize,
) -> Observable {
    assert!(max_terms >= 1, "max_terms must be at least 1");
    let basis = enumerate_sector(max_degree, sector, true);
    let n = rng.gen_range(1..=max_terms).min(basis.len());
    let chosen: Vec<_> = basis.choose_multiple(rng, n).copied().collect();
    Observable::from_terms(chosen.into_iter().map(|m| {
        let degree = rng.gen_range(0..=MAX_HBAR_DEGREE);
        (m, HbarSeries::monomial(random_coefficient(rng), degree))
    }))
}

pub fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> GaussianRational {
    loop {
        let c = GaussianRational::from_fractions(
            rng.gen_range(-COEFF_BOUND..=COEFF_BOUND),
            rng.gen_range(1..=COEFF_BOUND),
            rng.gen_range(-COEFF_BOUND..=COEFF_BOUND),
            rng.gen_range(1..=COEFF_BOUND),
        );
        if !c.is_zero() {
            return c;
        }
    }
}
