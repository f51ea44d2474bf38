//! Implicit sorted matrix of candidate errors.
//!
//! For cumulative values `c_1 < ... < c_n` (1-based indices):
//!
//! ```text
//! e(i, j) = 0                    if i + j <= n
//!         = c_i - c_{n+1-j}      if i <= n, j <= n, i + j >= n + 1
//!         = c_i                  if i <= n, j = n + 1
//!         = 1                    otherwise
//! ```
//!
//! Entries are non-decreasing along every row and column, including the
//! padding beyond `n` rows and `n + 1` columns. Every gap `c_e - c_f` with
//! `f <= e` appears at `(e, n + 1 - f)`, so the optimal one-sided error is
//! always an entry.

use crate::distribution::DiscreteDistribution;
use crate::scalar::Scalar;

/// Read-only view of a cumulative sequence as a sorted matrix. Entries are
/// computed on demand; nothing is materialized.
#[derive(Debug, Clone, Copy)]
pub struct CandidateMatrix<'a, T> {
    cum: &'a [T],
}

impl<'a, T: Scalar> CandidateMatrix<'a, T> {
    pub fn new(cum: &'a [T]) -> Self {
        debug_assert!(!cum.is_empty());
        Self { cum }
    }

    pub fn of(dist: &'a DiscreteDistribution<T>) -> Self {
        Self::new(dist.cum())
    }

    /// Support size `n` of the underlying distribution.
    pub fn n(&self) -> usize {
        self.cum.len()
    }

    /// Padded row count, `2^ceil(log2 n)`.
    pub fn rows(&self) -> usize {
        self.n().next_power_of_two()
    }

    /// Padded column count, `2^ceil(log2 (n + 1))`.
    pub fn cols(&self) -> usize {
        (self.n() + 1).next_power_of_two()
    }

    /// Region covering the whole padded matrix.
    pub fn full_region(&self) -> MatrixRegion {
        MatrixRegion::new((1, 1), (self.rows(), self.cols()))
    }

    /// Entry at 1-based `(i, j)`. Total on positive indices.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> T {
        debug_assert!(i >= 1 && j >= 1);
        let n = self.n();
        if i > n || j > n + 1 {
            T::one()
        } else if j == n + 1 {
            self.cum[i - 1]
        } else if i + j <= n {
            T::zero()
        } else {
            self.cum[i - 1] - self.cum[n - j]
        }
    }

    #[inline]
    pub fn top_left(&self, r: &MatrixRegion) -> T {
        self.entry(r.top_left.0, r.top_left.1)
    }

    #[inline]
    pub fn bottom_right(&self, r: &MatrixRegion) -> T {
        self.entry(r.bottom_right.0, r.bottom_right.1)
    }
}

/// Inclusive rectangle of 1-based `(row, col)` indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixRegion {
    pub top_left: (usize, usize),
    pub bottom_right: (usize, usize),
}

impl MatrixRegion {
    pub fn new(top_left: (usize, usize), bottom_right: (usize, usize)) -> Self {
        debug_assert!(top_left.0 <= bottom_right.0 && top_left.1 <= bottom_right.1);
        Self {
            top_left,
            bottom_right,
        }
    }

    pub fn singleton(i: usize, j: usize) -> Self {
        Self::new((i, j), (i, j))
    }

    pub fn is_singleton(&self) -> bool {
        self.top_left == self.bottom_right
    }

    pub fn rows(&self) -> usize {
        self.bottom_right.0 - self.top_left.0 + 1
    }

    pub fn cols(&self) -> usize {
        self.bottom_right.1 - self.top_left.1 + 1
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (self.top_left.0..=self.bottom_right.0).contains(&i)
            && (self.top_left.1..=self.bottom_right.1).contains(&j)
    }

    /// Quarters at the floor/ceil midpoints. A singleton maps to four copies
    /// of itself; a single row or column yields duplicated halves.
    pub fn split(&self) -> [MatrixRegion; 4] {
        let (i1, j1) = self.top_left;
        let (i2, j2) = self.bottom_right;
        let j_lo = (j1 + j2) / 2;
        let j_hi = (j1 + j2).div_ceil(2);
        let i_lo = (i1 + i2) / 2;
        let i_hi = (i1 + i2).div_ceil(2);
        [
            MatrixRegion::new((i1, j1), (i_lo, j_lo)),
            MatrixRegion::new((i1, j_hi), (i_lo, j2)),
            MatrixRegion::new((i_hi, j1), (i2, j_lo)),
            MatrixRegion::new((i_hi, j_hi), (i2, j2)),
        ]
    }
}

/// Sorted, deduplicated candidate errors: `{0, 1}`, every gap `c_j - c_i`
/// with `i < j`, and every `c_j`. Values closer than the comparison
/// tolerance collapse to the smallest of them.
pub fn candidate_list<T: Scalar>(dist: &DiscreteDistribution<T>) -> Vec<T> {
    let cum = dist.cum();
    let n = cum.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2 + 2);
    out.push(T::zero());
    out.push(T::one());
    for (j, &cj) in cum.iter().enumerate() {
        out.push(cj);
        out.extend(cum[..j].iter().map(|&ci| cj - ci));
    }
    out.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite candidates"));
    let tol = T::tolerance();
    out.dedup_by(|later, kept| *later - *kept <= tol);
    out
}
