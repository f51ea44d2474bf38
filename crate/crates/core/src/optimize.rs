//! Optimal one-sided approximation under a support budget `m`.
//!
//! All three searches look for the smallest candidate error `e` with
//! `minimal_support_size(X, e) <= m`. That predicate is monotone in `e`, and
//! the smallest such `e` is the optimal error. They differ only in where the
//! candidates come from and how many scans they spend:
//!
//! * [`bins_approx`]: binary search over the materialized candidate list,
//!   `O(n^2 log n)` time and `O(n^2)` memory.
//! * [`sdlbk_approx`]: frontier walk over the implicit sorted matrix,
//!   `O(n^2)` time and constant memory.
//! * [`lin_approx`]: quadrant pruning over the implicit matrix with median
//!   pivots, `O(log n)` scans and `O(n log n)` time.
//!
//! Each finishes with one strict greedy scan at the optimal error, so all
//! three return the same distribution.

use std::fmt;
use std::str::FromStr;

use crate::distribution::DiscreteDistribution;
use crate::dual::{count_groups, dual_approx, Approximation, DualMode};
use crate::error::{Error, Result};
use crate::matrix::{candidate_list, CandidateMatrix, MatrixRegion};
use crate::oracle::oracle_optimal;
use crate::scalar::Scalar;

/// Default support cap for [`bins_approx`], whose candidate list is quadratic.
pub const DEFAULT_BINSEARCH_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Binsearch,
    Saddleback,
    Linear,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Binsearch,
        Algorithm::Saddleback,
        Algorithm::Linear,
        Algorithm::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Binsearch => "binsearch",
            Algorithm::Saddleback => "saddleback",
            Algorithm::Linear => "linear",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown algorithm '{s}'")))
    }
}

/// Counts scans and their steps while probing the feasibility predicate.
struct Probe<'a, T> {
    cum: &'a [T],
    budget: usize,
    calls: usize,
    steps: usize,
}

impl<'a, T: Scalar> Probe<'a, T> {
    fn new(dist: &'a DiscreteDistribution<T>, budget: usize) -> Self {
        Self {
            cum: dist.cum(),
            budget,
            calls: 0,
            steps: 0,
        }
    }

    fn feasible(&mut self, e: T) -> bool {
        let (groups, steps) = count_groups(self.cum, e);
        self.calls += 1;
        self.steps += steps;
        groups <= self.budget
    }

    fn finish(
        self,
        dist: &DiscreteDistribution<T>,
        e: T,
        iterations: usize,
        peak_regions: usize,
    ) -> Result<Approximation<T>> {
        let mut out = dual_approx(dist, e, DualMode::Strict)?;
        debug_assert!(out.dist.len() <= self.budget);
        out.dual_calls += self.calls;
        out.step_count += self.steps;
        out.iterations = iterations;
        out.peak_regions = peak_regions;
        Ok(out)
    }
}

fn check_budget(m: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidBudget(m));
    }
    Ok(())
}

/// Binary search over [`candidate_list`] with the default size cap.
pub fn bins_approx<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    m: usize,
) -> Result<Approximation<T>> {
    bins_approx_capped(dist, m, DEFAULT_BINSEARCH_CAP)
}

/// Binary search over [`candidate_list`]; rejects inputs larger than `cap`.
pub fn bins_approx_capped<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    m: usize,
    cap: usize,
) -> Result<Approximation<T>> {
    check_budget(m)?;
    if m >= dist.len() {
        return Ok(Approximation::exact(dist));
    }
    if dist.len() > cap {
        return Err(Error::InputTooLarge { n: dist.len(), cap });
    }
    let candidates = candidate_list(dist);
    let mut probe = Probe::new(dist, m);
    // Invariant: candidates[hi] is feasible (the last one is 1), everything below lo is not.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    let mut iterations = 0;
    while lo < hi {
        iterations += 1;
        let mid = lo + (hi - lo) / 2;
        if probe.feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    probe.finish(dist, candidates[hi], iterations, 0)
}

/// Frontier walk from the top-right corner of the `n x (n + 1)` matrix:
/// left on a feasible entry, down on an infeasible one. The smallest
/// feasible entry lies on the frontier, so it is seen on the way.
pub fn sdlbk_approx<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    m: usize,
) -> Result<Approximation<T>> {
    check_budget(m)?;
    let n = dist.len();
    if m >= n {
        return Ok(Approximation::exact(dist));
    }
    let matrix = CandidateMatrix::of(dist);
    let mut probe = Probe::new(dist, m);
    let (mut i, mut j) = (1usize, n + 1);
    let mut best: Option<T> = None;
    let mut iterations = 0;
    while i <= n && j >= 1 {
        iterations += 1;
        let e = matrix.entry(i, j);
        if probe.feasible(e) {
            best = Some(best.map_or(e, |b| b.min(e)));
            j -= 1;
        } else {
            i += 1;
        }
    }
    let e = best.expect("entry (n, n + 1) = 1 is always feasible");
    probe.finish(dist, e, iterations, 0)
}

/// Quadrant pruning over the padded matrix.
///
/// Each round splits every live region into four, probes the median of the
/// top-left corners and the median of the bottom-right corners, and drops
/// regions that cannot hold the answer: after a feasible pivot, those whose
/// smallest entry is not below the best feasible value; after an infeasible
/// pivot, those whose largest entry is not above the largest infeasible
/// value. Pivots already decided by earlier probes cost no scan. When only
/// single cells remain, their distinct values are binary-searched.
pub fn lin_approx<T: Scalar>(dist: &DiscreteDistribution<T>, m: usize) -> Result<Approximation<T>> {
    check_budget(m)?;
    let n = dist.len();
    if m >= n {
        return Ok(Approximation::exact(dist));
    }
    let matrix = CandidateMatrix::of(dist);
    let mut probe = Probe::new(dist, m);

    // Smallest value known feasible / largest known infeasible.
    let mut feasible_min: Option<T> = None;
    let mut infeasible_max: Option<T> = None;

    let mut regions = vec![matrix.full_region()];
    let mut scratch: Vec<T> = Vec::new();
    let mut peak = 1usize;
    let mut rounds = 0usize;

    while regions.iter().any(|r| !r.is_singleton()) {
        rounds += 1;
        // Live regions are disjoint, so duplicates only come from a thin
        // region splitting into repeated halves.
        let mut next: Vec<MatrixRegion> = Vec::with_capacity(regions.len() * 4);
        for r in &regions {
            let parts = r.split();
            for k in 0..4 {
                if !parts[..k].contains(&parts[k]) {
                    next.push(parts[k]);
                }
            }
        }
        peak = peak.max(next.len());

        let low_pivot = median(&mut scratch, next.iter().map(|r| matrix.top_left(r)));
        let high_pivot = median(&mut scratch, next.iter().map(|r| matrix.bottom_right(r)));
        for pivot in [low_pivot, high_pivot] {
            let Some(e) = pivot else { break };
            let known_feasible = feasible_min.is_some_and(|b| e >= b);
            let known_infeasible = infeasible_max.is_some_and(|w| e <= w);
            if known_feasible || known_infeasible {
                continue;
            }
            if probe.feasible(e) {
                feasible_min = Some(e);
            } else {
                infeasible_max = Some(e);
            }
        }
        prune(&matrix, &mut next, feasible_min, infeasible_max);
        regions = next;
    }

    // Remaining cells all hold values strictly between the two bounds.
    let mut cells: Vec<T> = regions.iter().map(|r| matrix.top_left(r)).collect();
    cells.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    cells.dedup();
    let (mut lo, mut hi) = (0usize, cells.len());
    while lo < hi {
        rounds += 1;
        let mid = lo + (hi - lo) / 2;
        if probe.feasible(cells[mid]) {
            feasible_min = Some(feasible_min.map_or(cells[mid], |b| b.min(cells[mid])));
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }

    let e = feasible_min.unwrap_or_else(T::one);
    probe.finish(dist, e, rounds, peak)
}

fn prune<T: Scalar>(
    matrix: &CandidateMatrix<'_, T>,
    regions: &mut Vec<MatrixRegion>,
    feasible_min: Option<T>,
    infeasible_max: Option<T>,
) {
    regions.retain(|r| {
        let keep_low = feasible_min.is_none_or(|b| matrix.top_left(r) < b);
        let keep_high = infeasible_max.is_none_or(|w| matrix.bottom_right(r) > w);
        keep_low && keep_high
    });
}

/// Lower median of the values, or `None` when empty.
fn median<T: Scalar>(scratch: &mut Vec<T>, values: impl Iterator<Item = T>) -> Option<T> {
    scratch.clear();
    scratch.extend(values);
    if scratch.is_empty() {
        return None;
    }
    let k = (scratch.len() - 1) / 2;
    let (_, v, _) =
        scratch.select_nth_unstable_by(k, |a, b| a.partial_cmp(b).expect("finite entries"));
    Some(*v)
}

/// Optimal approximation with at most `m` support points using `algorithm`.
/// Inputs that already fit are returned unchanged.
pub fn compress<T: Scalar>(
    dist: &DiscreteDistribution<T>,
    m: usize,
    algorithm: Algorithm,
) -> Result<Approximation<T>> {
    check_budget(m)?;
    if m >= dist.len() {
        return Ok(Approximation::exact(dist));
    }
    match algorithm {
        Algorithm::Binsearch => bins_approx(dist, m),
        Algorithm::Saddleback => sdlbk_approx(dist, m),
        Algorithm::Linear => lin_approx(dist, m),
        Algorithm::Oracle => oracle_optimal(dist, m),
    }
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

    type Solver = fn(&DiscreteDistribution<f64>, usize) -> Result<Approximation<f64>>;
    const SOLVERS: [(&str, Solver); 3] = [
        ("binsearch", bins_approx::<f64>),
        ("saddleback", sdlbk_approx::<f64>),
        ("linear", lin_approx::<f64>),
    ];

    #[test]
    fn example_budgets() {
        let a = example_a();
        for (name, solve) in SOLVERS {
            let r = solve(&a, 3).unwrap();
            assert!((r.epsilon - 0.1).abs() < 1e-12, "{name}");
            assert_eq!(r.dist, cdf(&[(1.0, 0.3), (2.0, 0.7), (3.0, 1.0)]), "{name}");

            let r = solve(&a, 2).unwrap();
            assert!((r.epsilon - 0.3).abs() < 1e-12, "{name}");
            assert_eq!(r.dist, cdf(&[(1.0, 0.3), (2.0, 1.0)]), "{name}");

            let r = solve(&a, 1).unwrap();
            assert!((r.epsilon - 0.7).abs() < 1e-12, "{name}");
            assert_eq!(r.dist, DiscreteDistribution::point_mass(1.0), "{name}");

            let r = solve(&a, 4).unwrap();
            assert_eq!(r.epsilon, 0.0);
            assert_eq!(r.dist, a);

            assert_eq!(solve(&a, 0).unwrap_err(), Error::InvalidBudget(0));
        }
    }

    #[test]
    fn last_group_optimum_found() {
        let x = cdf(&[
            (1.0, 0.11),
            (2.0, 0.23),
            (3.0, 0.37),
            (4.0, 0.71),
            (5.0, 1.0),
        ]);
        for (name, solve) in SOLVERS {
            let r = solve(&x, 2).unwrap();
            assert!((r.epsilon - 0.29).abs() < 1e-12, "{name}: {}", r.epsilon);
        }
    }

    #[test]
    fn point_mass_is_exact() {
        let p = DiscreteDistribution::point_mass(7.0);
        for (_, solve) in SOLVERS {
            let r = solve(&p, 1).unwrap();
            assert_eq!(r.epsilon, 0.0);
            assert_eq!(r.dist, p);
        }
    }

    #[test]
    fn compress_dispatch() {
        let a = example_a();
        let r = compress(&a, 3, Algorithm::Linear).unwrap();
        assert!((r.epsilon - 0.1).abs() < 1e-12);
        let r = compress(&a, 5, Algorithm::Saddleback).unwrap();
        assert_eq!(r.dist, a);
        assert_eq!(r.epsilon, 0.0);
        assert_eq!(r.dual_calls, 0);
        assert_eq!(
            compress(&a, 0, Algorithm::Linear).unwrap_err(),
            Error::InvalidBudget(0)
        );
        let r = compress(&a, 2, Algorithm::Oracle).unwrap();
        assert!((r.epsilon - 0.3).abs() < 1e-12);
    }

    #[test]
    fn binsearch_cap() {
        let x: Vec<(f64, f64)> = (0..10).map(|k| (k as f64, 0.1)).collect();
        let x = DiscreteDistribution::from_pmf(&x).unwrap();
        assert_eq!(
            bins_approx_capped(&x, 3, 8).unwrap_err(),
            Error::InputTooLarge { n: 10, cap: 8 }
        );
        assert!(bins_approx_capped(&x, 3, 10).is_ok());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("fast".parse::<Algorithm>().is_err());
    }

    #[test]
    fn single_precision_agrees() {
        let a = DiscreteDistribution::<f32>::from_pmf(&[
            (1.0, 0.3),
            (2.0, 0.4),
            (3.0, 0.2),
            (4.0, 0.1),
        ])
        .unwrap();
        let r = lin_approx(&a, 2).unwrap();
        assert!((r.epsilon - 0.3).abs() < 1e-6);
        assert_eq!(r.dist, sdlbk_approx(&a, 2).unwrap().dist);
    }
}
