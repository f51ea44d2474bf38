//! Floating-point scalar abstraction shared by every algorithm in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating point: `f32` or `f64`.
///
/// Outcomes and probabilities share one scalar type. The two tolerances are
/// per-type because the representation noise of a cumulative sum scales with
/// the machine epsilon.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Comparison slack applied when testing a gap against a target error.
    fn tolerance() -> Self;

    /// Allowed deviation of a total mass from one.
    fn norm_tolerance() -> Self;

    /// Lossless for `f64` and exact for small integers in `f32`.
    fn from_f64_lossy(value: f64) -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn tolerance() -> Self {
        1e-12
    }

    #[inline]
    fn norm_tolerance() -> Self {
        1e-6
    }

    #[inline]
    fn from_f64_lossy(value: f64) -> Self {
        value
    }
}

impl Scalar for f32 {
    #[inline]
    fn tolerance() -> Self {
        1e-6
    }

    #[inline]
    fn norm_tolerance() -> Self {
        1e-4
    }

    #[inline]
    fn from_f64_lossy(value: f64) -> Self {
        value as f32
    }
}
