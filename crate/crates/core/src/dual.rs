//! Greedy minimal-support approximation for a fixed error.
//!
//! Given `X` with cumulative values `c_1 < ... < c_n` and a target `eps`, the
//! support is scanned once from the left. A group starts at index `f` and
//! extends to the largest `e` with `c_e - c_f <= eps`. Each group becomes a
//! single jump at `x_f` up to `c_e`, so the result never lies below `F_X` and
//! overshoots it by at most `eps`. The number of groups is the smallest
//! support any such upper approximation can have.

use crate::distribution::{to_f64, DiscreteDistribution};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How the scan treats the low-probability prefix of the support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DualMode {
    /// Every support point belongs to some group; the result dominates `F_X`.
    #[default]
    Strict,
    /// First skips the prefix with `c_f <= eps`, as in the original
    /// pseudocode. The result may fall below `F_X` on that prefix by at most
    /// `eps`, so it is a two-sided approximation only.
    PaperLiteral,
}

/// A compressed distribution together with its achieved error and the
/// counters collected while producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximation<T> {
    pub dist: DiscreteDistribution<T>,
    /// Largest gap between the approximation and the input CDF.
    pub epsilon: T,
    /// Number of greedy scans (full or counting) that were run.
    pub dual_calls: usize,
    /// Index advances summed over all scans.
    pub step_count: usize,
    /// Outer search-loop iterations (probes, frontier steps or rounds).
    pub iterations: usize,
    /// Largest number of matrix regions held at once (region search only).
    pub peak_regions: usize,
}

impl<T: Scalar> Approximation<T> {
    /// The input returned unchanged, with zero error.
    pub fn exact(dist: &DiscreteDistribution<T>) -> Self {
        Self {
            dist: dist.clone(),
            epsilon: T::zero(),
            dual_calls: 0,
            step_count: 0,
            iterations: 0,
            peak_regions: 0,
        }
    }

    pub fn support_size(&self) -> usize {
        self.dist.len()
    }
}

fn check_epsilon<T: Scalar>(epsilon: T) -> Result<()> {
    if epsilon.is_nan() || epsilon < T::zero() {
        return Err(Error::NegativeEpsilon(to_f64(epsilon)));
    }
    Ok(())
}

/// Smallest-support approximation within `epsilon` (see module docs).
pub fn dual_approx<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    epsilon: T,
    mode: DualMode,
) -> Result<Approximation<T>> {
    check_epsilon(epsilon)?;
    let values = dist.values();
    let cum = dist.cum();
    let n = cum.len();
    let limit = epsilon + T::tolerance();

    let mut steps = 0usize;
    let mut first = 0usize;
    let mut undershoot = T::zero();
    if mode == DualMode::PaperLiteral {
        // The last point always survives: c_n = 1 has to be reached somewhere.
        while first + 1 < n && cum[first] <= limit {
            undershoot = cum[first];
            first += 1;
            steps += 1;
        }
    }

    let mut out_values = Vec::new();
    let mut out_cum = Vec::new();
    let mut overshoot = T::zero();
    let mut start = first;
    while start < n {
        let mut end = start;
        while end + 1 < n && cum[end + 1] - cum[start] <= limit {
            end += 1;
            steps += 1;
        }
        out_values.push(values[start]);
        out_cum.push(cum[end]);
        overshoot = overshoot.max(cum[end] - cum[start]);
        start = end + 1;
        steps += 1;
    }

    Ok(Approximation {
        dist: DiscreteDistribution::from_sorted_cdf(out_values, out_cum),
        epsilon: overshoot.max(undershoot),
        dual_calls: 1,
        step_count: steps,
        iterations: 0,
        peak_regions: 0,
    })
}

/// Support size of `dual_approx(dist, epsilon, Strict)` without building it.
pub fn minimal_support_size<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    epsilon: T,
) -> Result<usize> {
    check_epsilon(epsilon)?;
    Ok(count_groups(dist.cum(), epsilon).0)
}

/// `(groups, steps)` of the strict scan. Constant working memory.
#[inline]
pub(crate) fn count_groups<T: Scalar>(cum: &[T], epsilon: T) -> (usize, usize) {
    let n = cum.len();
    let limit = epsilon + T::tolerance();
    let mut groups = 0usize;
    let mut steps = 0usize;
    let mut start = 0usize;
    while start < n {
        let base = cum[start];
        let mut end = start;
        while end + 1 < n && cum[end + 1] - base <= limit {
            end += 1;
        }
        steps += end - start + 1;
        groups += 1;
        start = end + 1;
    }
    (groups, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_a() -> DiscreteDistribution<f64> {
        DiscreteDistribution::from_cdf_pairs(&[(1.0, 0.3), (2.0, 0.7), (3.0, 0.9), (4.0, 1.0)])
            .unwrap()
    }

    fn cdf(pairs: &[(f64, f64)]) -> DiscreteDistribution<f64> {
        DiscreteDistribution::from_cdf_pairs(pairs).unwrap()
    }

    #[test]
    fn example_one_corrected_output() {
        let r = dual_approx(&example_a(), 0.1, DualMode::Strict).unwrap();
        assert_eq!(r.dist, cdf(&[(1.0, 0.3), (2.0, 0.7), (3.0, 1.0)]));
        assert!((r.epsilon - 0.1).abs() < 1e-12);
        assert_eq!(r.dual_calls, 1);
    }

    #[test]
    fn zero_epsilon_is_identity() {
        let a = example_a();
        let r = dual_approx(&a, 0.0, DualMode::Strict).unwrap();
        assert_eq!(r.dist, a);
        assert_eq!(r.epsilon, 0.0);
    }

    #[test]
    fn middle_group_merges() {
        let r = dual_approx(&example_a(), 0.2, DualMode::Strict).unwrap();
        assert_eq!(r.dist, cdf(&[(1.0, 0.3), (2.0, 0.9), (4.0, 1.0)]));
        assert!((r.epsilon - 0.2).abs() < 1e-12);
    }

    #[test]
    fn large_epsilon_single_group() {
        let r = dual_approx(&example_a(), 1.0, DualMode::Strict).unwrap();
        assert_eq!(r.dist, DiscreteDistribution::point_mass(1.0));
        assert!((r.epsilon - 0.7).abs() < 1e-12);
    }

    #[test]
    fn paper_literal_skips_prefix() {
        let x = cdf(&[(1.0, 0.05), (2.0, 0.5), (3.0, 1.0)]);
        let literal = dual_approx(&x, 0.1, DualMode::PaperLiteral).unwrap();
        assert_eq!(literal.dist, cdf(&[(2.0, 0.5), (3.0, 1.0)]));
        assert!((literal.epsilon - 0.05).abs() < 1e-12);
        let strict = dual_approx(&x, 0.1, DualMode::Strict).unwrap();
        assert_eq!(strict.dist, x);
    }

    #[test]
    fn paper_literal_keeps_last_point() {
        let r = dual_approx(&example_a(), 1.0, DualMode::PaperLiteral).unwrap();
        assert_eq!(r.dist, DiscreteDistribution::point_mass(4.0));
    }

    #[test]
    fn support_counts() {
        let a = example_a();
        assert_eq!(minimal_support_size(&a, 0.1).unwrap(), 3);
        assert_eq!(minimal_support_size(&a, 0.05).unwrap(), 4);
        assert_eq!(minimal_support_size(&a, 0.7).unwrap(), 1);
    }

    #[test]
    fn negative_epsilon_rejected() {
        let a = example_a();
        assert_eq!(
            minimal_support_size(&a, -0.1),
            Err(Error::NegativeEpsilon(-0.1))
        );
        assert!(dual_approx(&a, f64::NAN, DualMode::Strict).is_err());
    }

    #[test]
    fn step_count_linear() {
        let a = example_a();
        for eps in [0.0, 0.1, 0.2, 0.5, 1.0] {
            for mode in [DualMode::Strict, DualMode::PaperLiteral] {
                let r = dual_approx(&a, eps, mode).unwrap();
                assert!(r.step_count <= 2 * a.len());
            }
        }
    }
}
