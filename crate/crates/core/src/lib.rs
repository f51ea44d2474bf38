//! Compress a finite discrete random variable to at most `m` support points
//! while minimizing the one-sided Kolmogorov distance, and use that
//! compression to trim intermediate results when estimating deadline-miss
//! probabilities of series-parallel schedules.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.
//!
//! ```
//! use kolmogorov_approx::{compress, Algorithm, Distribution};
//!
//! let x = Distribution::from_pmf(&[(1.0, 0.3), (2.0, 0.4), (3.0, 0.2), (4.0, 0.1)]).unwrap();
//! let approx = compress(&x, 2, Algorithm::Linear).unwrap();
//! assert_eq!(approx.support_size(), 2);
//! assert!((approx.epsilon - 0.3).abs() < 1e-12);
//! ```

pub mod bench;
pub mod distribution;
pub mod dual;
pub mod error;
pub mod generate;
pub mod io;
pub mod matrix;
pub mod optimize;
pub mod oracle;
pub mod scalar;
pub mod schedule;

pub use distribution::{kolmogorov_distance, one_sided_excess, DiscreteDistribution};
pub use dual::{dual_approx, minimal_support_size, Approximation, DualMode};
pub use error::{Error, Result};
pub use matrix::{candidate_list, CandidateMatrix, MatrixRegion};
pub use optimize::{
    bins_approx, bins_approx_capped, compress, lin_approx, sdlbk_approx, Algorithm,
};
pub use oracle::{oracle_minimal_support, oracle_optimal};
pub use scalar::Scalar;
pub use schedule::{
    evaluate, evaluate_exact, parallel_combine, series_combine, ErrorBudget, Evaluation,
    ScheduleNode,
};

pub type Distribution = DiscreteDistribution<f64>;
pub type Distribution32 = DiscreteDistribution<f32>;
pub type Approx = Approximation<f64>;
pub type Schedule = ScheduleNode<f64>;
