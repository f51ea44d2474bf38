//! Deterministic random instances.
//!
//! For `(n, seed, grid)`: a ChaCha8 stream seeded with `seed` first draws
//! `n` distinct integers from `0..=10n` (`rand::seq::index::sample`), which
//! are sorted to form the support. It then draws `n` integer weights
//! uniformly from `1..=grid`. Cumulative values are the integer prefix sums
//! divided by the total weight, so every cumulative value is a single
//! rounding of an exact rational and the last one is exactly one.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn random_instance<T: Scalar>(
    n: usize,
    seed: u64,
    grid: u64,
) -> Result<DiscreteDistribution<T>> {
    if n < 1 {
        return Err(Error::InvalidParams(
            "instance size must be at least 1".into(),
        ));
    }
    if grid < n as u64 {
        return Err(Error::InvalidParams(format!(
            "grid {grid} must be at least the instance size {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = sample(&mut rng, 10 * n + 1, n).into_vec();
    outcomes.sort_unstable();

    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=grid)).collect();
    let total: u64 = weights.iter().sum();
    let total_t = T::from_u64(total).expect("weight total fits the scalar");
    let mut running = 0u64;
    let mut values = Vec::with_capacity(n);
    let mut cum = Vec::with_capacity(n);
    for (x, w) in outcomes.into_iter().zip(weights) {
        running += w;
        values.push(T::from_usize(x).expect("outcome fits the scalar"));
        cum.push(T::from_u64(running).expect("prefix fits the scalar") / total_t);
    }
    Ok(DiscreteDistribution::from_sorted_cdf(values, cum))
}
