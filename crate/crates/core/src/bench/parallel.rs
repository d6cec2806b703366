//! Wall-time scaling of the meeting-time estimator with thread count.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{meeting_time_estimate, EstimatorParams};
use crate::graph::Graph;
use crate::stats::{mean, sample_sd};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreadTiming {
    pub threads: usize,
    pub repeats: usize,
    pub mean_seconds: f64,
    pub sd_seconds: f64,
    /// Mean time at the first thread count divided by this one.
    pub speedup: f64,
    pub estimate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParallelReport {
    pub rows: Vec<ThreadTiming>,
    /// Every thread count produced bit-identical estimates.
    pub deterministic: bool,
    /// Threads the host reports as available.
    pub available_parallelism: usize,
}

/// Times `repeats` meeting-time runs on `(u, v)` inside a dedicated pool for
/// each entry of `threads_list`. Every run uses the same seed, so the
/// estimates must agree bit for bit across pools.
pub fn parallel_bench(
    g: &Graph,
    u: usize,
    v: usize,
    params: &EstimatorParams,
    threads_list: &[usize],
    repeats: usize,
) -> Result<ParallelReport> {
    if threads_list.is_empty() || threads_list.contains(&0) || repeats == 0 {
        return Err(Error::InvalidParameter("need positive thread counts and repeats".into()));
    }
    let mut rows: Vec<ThreadTiming> = Vec::new();
    let mut bits: Option<Option<u64>> = None;
    let mut deterministic = true;
    for &threads in threads_list {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        let mut times = Vec::with_capacity(repeats);
        let mut estimate = None;
        for _ in 0..repeats {
            let start = Instant::now();
            let est = pool.install(|| meeting_time_estimate(g, u, v, params))?;
            times.push(start.elapsed().as_secs_f64());
            let b = est.value.map(f64::to_bits);
            match bits {
                None => bits = Some(b),
                Some(prev) => deterministic &= prev == b,
            }
            estimate = est.value;
        }
        let mean_seconds = mean(&times);
        let base = rows.first().map_or(mean_seconds, |r| r.mean_seconds);
        rows.push(ThreadTiming {
            threads,
            repeats,
            mean_seconds,
            sd_seconds: if repeats > 1 { sample_sd(&times) } else { 0.0 },
            speedup: base / mean_seconds,
            estimate,
        });
    }
    Ok(ParallelReport {
        rows,
        deterministic,
        available_parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::complete;

    #[test]
    fn estimates_match_across_pools() {
        let params = EstimatorParams::practical(3000, 10_000, 9);
        let rep = parallel_bench(&complete(30), 0, 1, &params, &[1, 2, 4], 2).unwrap();
        assert!(rep.deterministic);
        assert_eq!(rep.rows.len(), 3);
        assert_eq!(rep.rows[0].speedup, 1.0);
        assert!(rep.rows.iter().all(|r| r.estimate == rep.rows[0].estimate));
    }
}
