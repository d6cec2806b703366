//! Hitting times as the mean of capped first-passage times.

use std::time::Instant;

use rayon::prelude::*;

use super::{Diagnostics, HtEstimate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{stream_rng, CHUNK};
use crate::walks::walk_until_hit_unchecked;

#[derive(Default, Clone, Copy)]
struct Tally {
    sum: u128,
    sum_sq: u128,
    truncated: u64,
}

/// Mean of `r` walks from `u` stopped at `v` or after `length_cap` steps.
///
/// A truncated walk counts as `length_cap`, which biases the estimate down;
/// the number of truncated walks is reported in the diagnostics.
pub fn walk_sampling_estimate(
    g: &Graph,
    u: usize,
    v: usize,
    r: u64,
    length_cap: u64,
    seed: u64,
) -> Result<HtEstimate> {
    if r == 0 || length_cap == 0 {
        return Err(Error::InvalidParameter("need r >= 1 and length_cap >= 1".into()));
    }
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Ok(HtEstimate::zero());
    }
    g.require_connected()?;
    let start = Instant::now();
    let chunks = r.div_ceil(CHUNK as u64);
    let run_chunk = |c: u64| {
        let mut rng = stream_rng(seed, c);
        let todo = (r - c * CHUNK as u64).min(CHUNK as u64);
        let mut t = Tally::default();
        for _ in 0..todo {
            let rec = walk_until_hit_unchecked(g, u, v, length_cap, &mut rng);
            let s = rec.steps as u128;
            t.sum += s;
            t.sum_sq += s * s;
            t.truncated += u64::from(!rec.hit);
        }
        t
    };
    let tallies: Vec<Tally> = if chunks > 1 {
        (0..chunks).into_par_iter().map(run_chunk).collect()
    } else {
        vec![run_chunk(0)]
    };
    let total = tallies.iter().fold(Tally::default(), |a, b| Tally {
        sum: a.sum + b.sum,
        sum_sq: a.sum_sq + b.sum_sq,
        truncated: a.truncated + b.truncated,
    });
    let rf = r as f64;
    let mean = total.sum as f64 / rf;
    let sample_variance = if r > 1 {
        // r S2 - S1^2 in integers where it fits, to avoid cancellation.
        let num = (r as u128)
            .checked_mul(total.sum_sq)
            .zip(total.sum.checked_mul(total.sum))
            .map(|(a, b)| (a - b) as f64)
            .unwrap_or_else(|| total.sum_sq as f64 * rf - (total.sum as f64).powi(2));
        (num / (rf * (rf - 1.0))).max(0.0)
    } else {
        0.0
    };
    Ok(HtEstimate {
        value: Some(mean),
        failed: false,
        walks_used: r,
        total_steps: total.sum as u64,
        wall_time: start.elapsed(),
        diagnostics: Diagnostics::Sampling {
            cap: length_cap,
            truncated: total.truncated,
            sample_variance,
        },
    })
}
