use std::ops::Range;

use crate::channel::SeedSpec;
use crate::error::{Error, Result};
use crate::params::SystemParams;

use super::accumulator::MetricAccumulator;
use super::trial::run_trial;

/// Trials per work unit. Chunk boundaries depend only on the trial count, and
/// chunk accumulators are merged in index order, so floating-point sums are
/// bit-identical for every worker count.
pub const CHUNK_TRIALS: u64 = 1 << 14;

fn chunks(trials: u64) -> impl Iterator<Item = Range<u64>> + Clone {
    (0..trials.div_ceil(CHUNK_TRIALS))
        .map(move |c| c * CHUNK_TRIALS..((c + 1) * CHUNK_TRIALS).min(trials))
}

fn run_chunk(params: &SystemParams, master_seed: u64, range: Range<u64>) -> MetricAccumulator {
    let mut acc = MetricAccumulator::new(params.m);
    for t in range {
        acc.record(&run_trial(params, SeedSpec::new(master_seed, t)));
    }
    acc
}

fn fold(params: &SystemParams, parts: impl IntoIterator<Item = MetricAccumulator>) -> MetricAccumulator {
    parts
        .into_iter()
        .fold(MetricAccumulator::new(params.m), |acc, part| acc.merge(&part))
}

fn check(params: &SystemParams, trials: u64) -> Result<()> {
    params.validate()?;
    if trials == 0 {
        return Err(Error::InvalidParam {
            name: "trials",
            reason: "need at least one trial".into(),
        });
    }
    Ok(())
}

/// Single-threaded batch over trial indices `0..trials`.
pub fn run_batch_sequential(
    params: &SystemParams,
    master_seed: u64,
    trials: u64,
) -> Result<MetricAccumulator> {
    check(params, trials)?;
    Ok(fold(
        params,
        chunks(trials).map(|r| run_chunk(params, master_seed, r)),
    ))
}

/// Batch over trial indices `0..trials` on `workers` threads (`0` picks the
/// rayon default). The result does not depend on `workers`.
#[cfg(feature = "parallel")]
pub fn run_batch(
    params: &SystemParams,
    master_seed: u64,
    trials: u64,
    workers: usize,
) -> Result<MetricAccumulator> {
    use rayon::prelude::*;

    check(params, trials)?;
    if workers == 1 {
        return run_batch_sequential(params, master_seed, trials);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParam {
            name: "workers",
            reason: e.to_string(),
        })?;
    let ranges: Vec<Range<u64>> = chunks(trials).collect();
    let parts: Vec<MetricAccumulator> = pool.install(|| {
        ranges
            .into_par_iter()
            .map(|r| run_chunk(params, master_seed, r))
            .collect()
    });
    Ok(fold(params, parts))
}

/// Built without the `parallel` feature: always sequential, `workers` is ignored.
#[cfg(not(feature = "parallel"))]
pub fn run_batch(
    params: &SystemParams,
    master_seed: u64,
    trials: u64,
    _workers: usize,
) -> Result<MetricAccumulator> {
    run_batch_sequential(params, master_seed, trials)
}
