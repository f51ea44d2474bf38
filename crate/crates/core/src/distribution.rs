//! Finite discrete random variables stored as a sorted support with its
//! cumulative distribution, plus the Kolmogorov distances between them.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite discrete random variable.
///
/// `values` is strictly increasing, `cum[i] = Pr(X <= values[i])` is strictly
/// increasing and the last cumulative value is exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution<T> {
    values: Vec<T>,
    cum: Vec<T>,
}

impl<T: Scalar> DiscreteDistribution<T> {
    /// Builds a distribution from `(outcome, mass)` pairs in any order.
    ///
    /// Repeated outcomes are merged, zero masses dropped, and the residual of
    /// the total against one is folded into the last point.
    pub fn from_pmf(pairs: &[(T, T)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &(x, p)) in pairs.iter().enumerate() {
            if !x.is_finite() || !p.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if p < T::zero() {
                return Err(Error::NegativeMass {
                    outcome: to_f64(x),
                    mass: to_f64(p),
                });
            }
        }

        let mut sorted = pairs.to_vec();
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));

        let mut merged: Vec<(T, T)> = Vec::with_capacity(sorted.len());
        for (x, p) in sorted {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 = last.1 + p,
                _ => merged.push((x, p)),
            }
        }
        merged.retain(|&(_, p)| p > T::zero());
        if merged.is_empty() {
            return Err(Error::NotNormalized { total: 0.0 });
        }

        let mut total = T::zero();
        let mut values = Vec::with_capacity(merged.len());
        let mut cum = Vec::with_capacity(merged.len());
        for (x, p) in merged {
            total = total + p;
            values.push(x);
            cum.push(total);
        }
        if (total - T::one()).abs() > T::norm_tolerance() {
            return Err(Error::NotNormalized {
                total: to_f64(total),
            });
        }
        Ok(Self::from_sorted_cdf(values, cum))
    }

    /// Builds a distribution from `(outcome, Pr(X <= outcome))` pairs.
    pub fn from_cdf_pairs(pairs: &[(T, T)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &(x, c)) in pairs.iter().enumerate() {
            if !x.is_finite() || !c.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if c <= T::zero() {
                return Err(Error::OutOfRange {
                    index,
                    value: to_f64(c),
                });
            }
            if index > 0 {
                let (px, pc) = pairs[index - 1];
                if x <= px || c <= pc {
                    return Err(Error::NonMonotone { index });
                }
            }
        }
        let last = pairs[pairs.len() - 1].1;
        if (last - T::one()).abs() > T::norm_tolerance() {
            return Err(Error::NotNormalized {
                total: to_f64(last),
            });
        }
        if pairs.len() >= 2 && pairs[pairs.len() - 2].1 >= T::one() {
            return Err(Error::NonMonotone {
                index: pairs.len() - 1,
            });
        }
        let (values, mut cum): (Vec<T>, Vec<T>) = pairs.iter().copied().unzip();
        *cum.last_mut().expect("non-empty") = T::one();
        Ok(Self { values, cum })
    }

    /// Point mass at `x`.
    pub fn point_mass(x: T) -> Self {
        Self {
            values: vec![x],
            cum: vec![T::one()],
        }
    }

    /// Canonicalizes an already sorted support with a non-decreasing
    /// cumulative sequence: clamps at one, forces the last value to one and
    /// drops points that carry no mass.
    pub(crate) fn from_sorted_cdf(values: Vec<T>, cum: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), cum.len());
        debug_assert!(!values.is_empty());
        let n = cum.len();
        let mut out_values = Vec::with_capacity(n);
        let mut out_cum = Vec::with_capacity(n);
        let mut prev = T::zero();
        for (k, (x, c)) in values.into_iter().zip(cum).enumerate() {
            let c = if k + 1 == n {
                T::one()
            } else {
                c.min(T::one())
            };
            if c <= prev {
                continue;
            }
            // Once a point reaches one, later points would carry no mass.
            if c >= T::one() && k + 1 < n {
                out_values.push(x);
                out_cum.push(T::one());
                return Self {
                    values: out_values,
                    cum: out_cum,
                };
            }
            out_values.push(x);
            out_cum.push(c);
            prev = c;
        }
        Self {
            values: out_values,
            cum: out_cum,
        }
    }

    /// Support size.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn cum(&self) -> &[T] {
        &self.cum
    }

    pub fn min_value(&self) -> T {
        self.values[0]
    }

    pub fn max_value(&self) -> T {
        self.values[self.values.len() - 1]
    }

    /// Masses as successive differences of the cumulative sequence.
    pub fn pmf(&self) -> Vec<(T, T)> {
        let mut prev = T::zero();
        self.values
            .iter()
            .zip(&self.cum)
            .map(|(&x, &c)| {
                let p = c - prev;
                prev = c;
                (x, p)
            })
            .collect()
    }

    /// `(outcome, cumulative)` pairs.
    pub fn cdf_pairs(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.values.iter().copied().zip(self.cum.iter().copied())
    }

    /// Right-continuous CDF: `Pr(X <= t)`.
    pub fn cdf_at(&self, t: T) -> T {
        let idx = self.values.partition_point(|&x| x <= t);
        if idx == 0 {
            T::zero()
        } else {
            self.cum[idx - 1]
        }
    }

    /// Same distribution with every outcome shifted by `offset`.
    pub fn shifted(&self, offset: T) -> Self {
        Self {
            values: self.values.iter().map(|&x| x + offset).collect(),
            cum: self.cum.clone(),
        }
    }
}

/// Walks the union of both supports in increasing order, yielding
/// `(t, F_a(t), F_b(t))` at every support point of either variable.
pub fn merged_cdf_walk<'a, T: Scalar>(
    a: &'a DiscreteDistribution<T>,
    b: &'a DiscreteDistribution<T>,
) -> impl Iterator<Item = (T, T, T)> + 'a {
    let (mut i, mut j) = (0usize, 0usize);
    let (mut fa, mut fb) = (T::zero(), T::zero());
    std::iter::from_fn(move || {
        let xa = a.values.get(i).copied();
        let xb = b.values.get(j).copied();
        let t = match (xa, xb) {
            (None, None) => return None,
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (Some(x), Some(y)) => x.min(y),
        };
        if xa == Some(t) {
            fa = a.cum[i];
            i += 1;
        }
        if xb == Some(t) {
            fb = b.cum[j];
            j += 1;
        }
        Some((t, fa, fb))
    })
}

/// `sup_t |F_a(t) - F_b(t)|`, exact, linear in the total support size.
pub fn kolmogorov_distance<T: Scalar>(
    a: &DiscreteDistribution<T>,
    b: &DiscreteDistribution<T>,
) -> T {
    merged_cdf_walk(a, b).fold(T::zero(), |acc, (_, fa, fb)| acc.max((fa - fb).abs()))
}

/// `sup_t F_b(t) - F_a(t)`.
///
/// Both CDFs vanish below the supports and equal one above them, so the
/// result is never negative. `b` dominates `a` from above exactly when
/// `one_sided_excess(b, a)` is zero.
pub fn one_sided_excess<T: Scalar>(a: &DiscreteDistribution<T>, b: &DiscreteDistribution<T>) -> T {
    merged_cdf_walk(a, b).fold(T::zero(), |acc, (_, fa, fb)| acc.max(fb - fa))
}

pub(crate) fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
