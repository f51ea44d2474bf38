//! Completion-time distributions of series-parallel schedules.
//!
//! A series node adds independent durations (convolution), a parallel node
//! takes their maximum (product of CDFs). Intermediate results can be trimmed
//! to a support budget with an upper approximation. Every trim records its
//! error, and the sum of those errors bounds how far the trimmed CDF can sit
//! above the exact one.

use std::collections::BTreeMap;
use std::fmt;

use crate::distribution::{merged_cdf_walk, DiscreteDistribution};
use crate::error::{Error, Result};
use crate::optimize::{compress, Algorithm};
use crate::scalar::Scalar;

/// Default cap on the support of a single convolution result.
pub const DEFAULT_SUPPORT_CAP: usize = 1 << 24;

/// Series-parallel expression over task-duration distributions.
#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleNode<T> {
    Leaf(DiscreteDistribution<T>),
    Series(Vec<ScheduleNode<T>>),
    Parallel(Vec<ScheduleNode<T>>),
}

impl<T: Scalar> ScheduleNode<T> {
    pub fn leaf(dist: DiscreteDistribution<T>) -> Self {
        ScheduleNode::Leaf(dist)
    }

    /// Series composition; needs at least two children.
    pub fn series(children: Vec<ScheduleNode<T>>) -> Result<Self> {
        check_arity("series", &children)?;
        Ok(ScheduleNode::Series(children))
    }

    /// Parallel composition; needs at least two children.
    pub fn parallel(children: Vec<ScheduleNode<T>>) -> Result<Self> {
        check_arity("parallel", &children)?;
        Ok(ScheduleNode::Parallel(children))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            ScheduleNode::Leaf(_) => 1,
            ScheduleNode::Series(c) | ScheduleNode::Parallel(c) => {
                c.iter().map(Self::leaf_count).sum()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ScheduleNode::Leaf(_) => 0,
            ScheduleNode::Series(c) | ScheduleNode::Parallel(c) => {
                1 + c.iter().map(Self::depth).max().unwrap_or(0)
            }
        }
    }
}

fn check_arity<T>(kind: &str, children: &[ScheduleNode<T>]) -> Result<()> {
    if children.len() < 2 {
        return Err(Error::Schema {
            path: "root".into(),
            message: format!(
                "{kind} node needs at least 2 children, got {}",
                children.len()
            ),
        });
    }
    Ok(())
}

/// Finite outcome usable as an ordered map key.
#[derive(Clone, Copy, PartialEq)]
struct Outcome<T>(T);

impl<T: PartialEq> Eq for Outcome<T> {}

impl<T: PartialOrd> PartialOrd for Outcome<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: PartialOrd> Ord for Outcome<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.partial_cmp(&other.0).expect("outcomes are finite")
    }
}

/// Distribution of `a + b` for independent `a`, `b`.
pub fn series_combine<T: Scalar>(
    a: &DiscreteDistribution<T>,
    b: &DiscreteDistribution<T>,
) -> Result<DiscreteDistribution<T>> {
    series_combine_capped(a, b, DEFAULT_SUPPORT_CAP)
}

/// [`series_combine`] failing with `SupportOverflow` once more than `cap`
/// distinct sums appear.
pub fn series_combine_capped<T: Scalar>(
    a: &DiscreteDistribution<T>,
    b: &DiscreteDistribution<T>,
    cap: usize,
) -> Result<DiscreteDistribution<T>> {
    let mut acc: BTreeMap<Outcome<T>, T> = BTreeMap::new();
    let pb = b.pmf();
    for (xa, ma) in a.pmf() {
        for &(xb, mb) in &pb {
            let slot = acc.entry(Outcome(xa + xb)).or_insert_with(T::zero);
            *slot = *slot + ma * mb;
            if acc.len() > cap {
                return Err(Error::SupportOverflow { cap });
            }
        }
    }
    let mut values = Vec::with_capacity(acc.len());
    let mut cum = Vec::with_capacity(acc.len());
    let mut running = T::zero();
    for (x, p) in acc {
        running = running + p;
        values.push(x.0);
        cum.push(running);
    }
    Ok(DiscreteDistribution::from_sorted_cdf(values, cum))
}

/// Distribution of `max(a, b)` for independent `a`, `b`.
pub fn parallel_combine<T: Scalar>(
    a: &DiscreteDistribution<T>,
    b: &DiscreteDistribution<T>,
) -> DiscreteDistribution<T> {
    let (values, cum): (Vec<T>, Vec<T>) = merged_cdf_walk(a, b)
        .map(|(t, fa, fb)| (t, fa * fb))
        .unzip();
    DiscreteDistribution::from_sorted_cdf(values, cum)
}

/// One trim: where it happened and the error it introduced.
#[derive(Debug, Clone, PartialEq)]
pub struct TrimRecord<T> {
    /// Node path such as `root.1.0`; `root.1@2` is the fold of children
    /// `0..=2` of node `root.1`.
    pub path: String,
    pub epsilon: T,
}

/// Ordered per-trim errors and their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorBudget<T> {
    per_trim: Vec<TrimRecord<T>>,
    total: T,
}

impl<T: Scalar> Default for ErrorBudget<T> {
    fn default() -> Self {
        Self {
            per_trim: Vec::new(),
            total: T::zero(),
        }
    }
}

impl<T: Scalar> ErrorBudget<T> {
    pub fn push(&mut self, path: String, epsilon: T) {
        debug_assert!(epsilon >= T::zero());
        self.total = self.total + epsilon;
        self.per_trim.push(TrimRecord { path, epsilon });
    }

    pub fn records(&self) -> &[TrimRecord<T>] {
        &self.per_trim
    }

    pub fn total(&self) -> T {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.per_trim.is_empty()
    }
}

/// Lower and upper bound on a deadline-miss probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MissInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> MissInterval<T> {
    pub fn contains(&self, p: T) -> bool {
        self.lo - T::tolerance() <= p && p <= self.hi + T::tolerance()
    }
}

impl<T: Scalar> fmt::Display for MissInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A (possibly trimmed) completion-time distribution with its error budget.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<T> {
    pub dist: DiscreteDistribution<T>,
    pub budget: ErrorBudget<T>,
}

impl<T: Scalar> Evaluation<T> {
    /// Interval for `Pr(completion > deadline)`.
    ///
    /// Trimmed CDFs never fall below the exact one and exceed it by at most
    /// the budget total, so the exact probability lies in
    /// `[p, p + total]` with `p = 1 - F(deadline)`.
    pub fn miss_probability(&self, deadline: T) -> MissInterval<T> {
        let p = T::one() - self.dist.cdf_at(deadline);
        MissInterval {
            lo: p.max(T::zero()),
            hi: (p + self.budget.total()).min(T::one()),
        }
    }
}

/// Trimming policy for [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrimPolicy {
    pub budget: usize,
    pub algorithm: Algorithm,
    pub support_cap: usize,
}

impl TrimPolicy {
    pub fn new(budget: usize, algorithm: Algorithm) -> Self {
        Self {
            budget,
            algorithm,
            support_cap: DEFAULT_SUPPORT_CAP,
        }
    }
}

/// Evaluates `tree` bottom-up, trimming every leaf and every pairwise
/// combine whose support exceeds `m`.
pub fn evaluate<T: Scalar>(
    tree: &ScheduleNode<T>,
    m: usize,
    algorithm: Algorithm,
) -> Result<Evaluation<T>> {
    evaluate_with(tree, Some(TrimPolicy::new(m, algorithm)))
}

/// Exact evaluation with no trimming.
pub fn evaluate_exact<T: Scalar>(tree: &ScheduleNode<T>) -> Result<Evaluation<T>> {
    evaluate_with(tree, None)
}

pub fn evaluate_with<T: Scalar>(
    tree: &ScheduleNode<T>,
    policy: Option<TrimPolicy>,
) -> Result<Evaluation<T>> {
    if let Some(p) = policy {
        if p.budget < 1 {
            return Err(Error::InvalidBudget(p.budget));
        }
    }
    let cap = policy.map_or(DEFAULT_SUPPORT_CAP, |p| p.support_cap);
    let mut budget = ErrorBudget::default();
    let dist = eval_node(tree, "root", policy, cap, &mut budget)?;
    Ok(Evaluation { dist, budget })
}

fn trim<T: Scalar>(
    dist: DiscreteDistribution<T>,
    path: String,
    policy: Option<TrimPolicy>,
    budget: &mut ErrorBudget<T>,
) -> Result<DiscreteDistribution<T>> {
    match policy {
        Some(p) if dist.len() > p.budget => {
            let approx = compress(&dist, p.budget, p.algorithm)?;
            budget.push(path, approx.epsilon);
            Ok(approx.dist)
        }
        _ => Ok(dist),
    }
}

fn eval_node<T: Scalar>(
    node: &ScheduleNode<T>,
    path: &str,
    policy: Option<TrimPolicy>,
    cap: usize,
    budget: &mut ErrorBudget<T>,
) -> Result<DiscreteDistribution<T>> {
    let children = match node {
        ScheduleNode::Leaf(d) => return trim(d.clone(), path.to_string(), policy, budget),
        ScheduleNode::Series(c) | ScheduleNode::Parallel(c) => c,
    };
    let mut acc = eval_node(&children[0], &format!("{path}.0"), policy, cap, budget)?;
    for (k, child) in children.iter().enumerate().skip(1) {
        let rhs = eval_node(child, &format!("{path}.{k}"), policy, cap, budget)?;
        let combined = match node {
            ScheduleNode::Series(_) => series_combine_capped(&acc, &rhs, cap)?,
            _ => parallel_combine(&acc, &rhs),
        };
        let label = if k + 1 == children.len() {
            path.to_string()
        } else {
            format!("{path}@{k}")
        };
        acc = trim(combined, label, policy, budget)?;
    }
    Ok(acc)
}
