//! Benchmark harness: one record per (instance size, algorithm).

use std::time::Instant;

use serde::Serialize;

use crate::distribution::DiscreteDistribution;
use crate::error::Result;
use crate::generate::random_instance;
use crate::optimize::{compress, Algorithm};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    pub epsilon: f64,
    pub dual_calls: usize,
    pub step_count: usize,
    pub iterations: usize,
    pub peak_regions: usize,
    pub wall_nanos: u128,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub m: usize,
    pub algorithms: Vec<Algorithm>,
    pub seed: u64,
    pub grid: u64,
}

/// Runs every cell sequentially; instance `n` is generated once from
/// `(n, seed, max(grid, n))` and shared by all algorithms.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::with_capacity(config.sizes.len() * config.algorithms.len());
    for &n in &config.sizes {
        let instance: DiscreteDistribution<f64> =
            random_instance(n, config.seed, config.grid.max(n as u64))?;
        for &algorithm in &config.algorithms {
            let start = Instant::now();
            let approx = compress(&instance, config.m, algorithm)?;
            let wall_nanos = start.elapsed().as_nanos();
            records.push(BenchRecord {
                n,
                m: config.m,
                algorithm: algorithm.name().to_string(),
                epsilon: approx.epsilon,
                dual_calls: approx.dual_calls,
                step_count: approx.step_count,
                iterations: approx.iterations,
                peak_regions: approx.peak_regions,
                wall_nanos,
                seed: config.seed,
            });
        }
    }
    Ok(records)
}

pub fn write_bench_csv(records: &[BenchRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer.serialize(r).expect("in-memory CSV write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("CSV output is UTF-8")
}
