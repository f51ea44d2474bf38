//! Exhaustive reference solutions for small inputs.
//!
//! Every candidate approximation is a subset of support positions holding a
//! jump (the first position is always one of them), with each jump's value
//! forced to the cumulative value just before the next jump. The error of a
//! candidate is measured with [`one_sided_excess`], independently of the
//! greedy scan.

use std::cmp::Ordering;

use crate::distribution::{one_sided_excess, DiscreteDistribution};
use crate::dual::Approximation;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest support the enumeration accepts.
pub const ORACLE_LIMIT: usize = 20;

fn guard<T: Scalar>(dist: &DiscreteDistribution<T>) -> Result<()> {
    if dist.len() > ORACLE_LIMIT {
        return Err(Error::TooLargeForOracle {
            n: dist.len(),
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// Jump positions encoded by `mask`: position 0 plus bit `k` for position `k + 1`.
fn jump_positions(mask: u32, n: usize) -> Vec<usize> {
    std::iter::once(0)
        .chain((1..n).filter(|&k| mask & (1 << (k - 1)) != 0))
        .collect()
}

fn forced_candidate<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    jumps: &[usize],
) -> DiscreteDistribution<T> {
    let values = dist.values();
    let cum = dist.cum();
    let pairs: Vec<(T, T)> = jumps
        .iter()
        .enumerate()
        .map(|(r, &p)| {
            let level = match jumps.get(r + 1) {
                Some(&next) => cum[next - 1],
                None => T::one(),
            };
            (values[p], level)
        })
        .collect();
    DiscreteDistribution::from_cdf_pairs(&pairs).expect("forced levels are strictly increasing")
}

fn candidates<T: Scalar>(
    dist: &DiscreteDistribution<T>,
) -> impl Iterator<Item = (Vec<usize>, DiscreteDistribution<T>, T)> + '_ {
    let n = dist.len();
    (0u32..(1u32 << (n - 1))).map(move |mask| {
        let jumps = jump_positions(mask, n);
        let cand = forced_candidate(dist, &jumps);
        let err = one_sided_excess(dist, &cand);
        (jumps, cand, err)
    })
}

/// Smallest support of an upper approximation within `epsilon`.
pub fn oracle_minimal_support<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    epsilon: T,
) -> Result<usize> {
    guard(dist)?;
    if epsilon.is_nan() || epsilon < T::zero() {
        return Err(Error::NegativeEpsilon(epsilon.to_f64().unwrap_or(f64::NAN)));
    }
    let limit = epsilon + T::tolerance();
    Ok(candidates(dist)
        .filter(|(_, _, err)| *err <= limit)
        .map(|(jumps, _, _)| jumps.len())
        .min()
        .expect("the full support always qualifies"))
}

/// Best upper approximation with at most `m` support points.
///
/// Ties go to the smaller error, then to the lexicographically smallest
/// jump-position sequence.
pub fn oracle_optimal<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    m: usize,
) -> Result<Approximation<T>> {
    if m < 1 {
        return Err(Error::InvalidBudget(m));
    }
    guard(dist)?;
    let tol = T::tolerance();
    let mut best: Option<(Vec<usize>, DiscreteDistribution<T>, T)> = None;
    let mut evaluated = 0usize;
    for (jumps, cand, err) in candidates(dist) {
        if jumps.len() > m {
            continue;
        }
        evaluated += 1;
        let better = match &best {
            None => true,
            Some((bj, _, be)) => {
                if err < *be - tol {
                    true
                } else if err <= *be + tol {
                    jumps.cmp(bj) == Ordering::Less
                } else {
                    false
                }
            }
        };
        if better {
            best = Some((jumps, cand, err));
        }
    }
    let (_, dist, epsilon) = best.expect("the single-jump candidate always fits");
    Ok(Approximation {
        dist,
        epsilon,
        dual_calls: 0,
        step_count: 0,
        iterations: evaluated,
        peak_regions: 0,
    })
}
