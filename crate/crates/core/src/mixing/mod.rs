//! Local mixing times, mixing tests and the truncated resistance series.

mod closeness;
mod series;

use rand::seq::index::sample;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use closeness::{
    l1_closeness_test, per_side_budget, repeats_for, ClosenessVerdict, Verdict, BUDGET_CONSTANT,
    THRESHOLD_CONSTANT,
};
pub use series::{
    effres_series_length, effres_series_partial_sums, effres_truncated_series,
    effres_truncated_series_sampled, fit_series_decay, SeriesDecay,
};

use crate::error::{Error, Result};
use crate::exact::{l1_distance, push_distribution};
use crate::graph::Graph;
use crate::rng::{derive_seed, stream_rng};
use crate::walks::next_node;

/// Above this many nodes [`mixing_test`] compares a random subset of starts.
pub const MIXING_START_CAP: usize = 10_000;

/// Smallest `i` with `||1_u P^i - 1_v P^i||_1 <= epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalMixing {
    pub t_min: usize,
    pub epsilon: f64,
    /// Computed from exact distributions rather than samples.
    pub exact: bool,
}

/// Scans `i = 0, 1, ..., max_t` with exact distributions. The distance is not
/// monotone in general, so the scan never skips.
pub fn local_pair_mixing_exact(
    g: &Graph,
    u: usize,
    v: usize,
    epsilon: f64,
    max_t: usize,
) -> Result<LocalMixing> {
    g.check_node(u)?;
    g.check_node(v)?;
    let n = g.n();
    let mut xu = vec![0.0; n];
    let mut xv = vec![0.0; n];
    xu[u] = 1.0;
    xv[v] = 1.0;
    for t in 0..=max_t {
        if l1_distance(&xu, &xv) <= epsilon {
            return Ok(LocalMixing { t_min: t, epsilon, exact: true });
        }
        if t < max_t {
            for x in [u, v] {
                if g.degree(x) == 0 {
                    return Err(Error::IsolatedNode(x));
                }
            }
            xu = push_distribution(g, &xu);
            xv = push_distribution(g, &xv);
        }
    }
    Err(Error::NoConvergence {
        what: "local pair mixing scan",
        iterations: max_t,
        residual: l1_distance(&xu, &xv),
    })
}

/// `||1_u P^i - 1_v P^i||_1` for `i = 0..=t`.
pub fn local_distance_curve(g: &Graph, u: usize, v: usize, t: usize) -> Result<Vec<f64>> {
    g.check_node(u)?;
    g.check_node(v)?;
    g.require_connected()?;
    let n = g.n();
    let mut xu = vec![0.0; n];
    let mut xv = vec![0.0; n];
    xu[u] = 1.0;
    xv[v] = 1.0;
    let mut out = vec![l1_distance(&xu, &xv)];
    for _ in 0..t {
        xu = push_distribution(g, &xu);
        xv = push_distribution(g, &xv);
        out.push(l1_distance(&xu, &xv));
    }
    Ok(out)
}

fn walk_endpoint(g: &Graph, start: usize, t: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut x = start;
    for _ in 0..t {
        x = next_node(g, x, rng);
    }
    x
}

/// Closeness test between the `t`-step distributions from `u` and `v`.
pub fn pair_closeness_test(
    g: &Graph,
    u: usize,
    v: usize,
    t: usize,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<ClosenessVerdict> {
    g.check_node(u)?;
    g.check_node(v)?;
    g.require_connected()?;
    let mut rng = stream_rng(seed, 0);
    Ok(l1_closeness_test(
        |r: &mut ChaCha8Rng| walk_endpoint(g, u, t, r),
        |r: &mut ChaCha8Rng| walk_endpoint(g, v, t, r),
        g.n(),
        epsilon,
        delta,
        &mut rng,
    ))
}

/// Sampled counterpart of [`local_pair_mixing_exact`]: the first `t` whose
/// closeness test accepts, each test run at confidence `delta / (max_t + 1)`.
pub fn local_pair_mixing_sampled(
    g: &Graph,
    u: usize,
    v: usize,
    epsilon: f64,
    delta: f64,
    max_t: usize,
    seed: u64,
) -> Result<LocalMixing> {
    let per_test = delta / (max_t + 1) as f64;
    for t in 0..=max_t {
        if u == v || pair_closeness_test(g, u, v, t, epsilon, per_test, derive_seed(seed, t as u64))?.accepted() {
            return Ok(LocalMixing { t_min: t, epsilon, exact: false });
        }
    }
    Err(Error::NoConvergence {
        what: "sampled local pair mixing scan",
        iterations: max_t,
        residual: f64::NAN,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixingVerdict {
    pub verdict: Verdict,
    pub reference: usize,
    /// Starts compared against the reference before a verdict was reached.
    pub comparisons: usize,
    /// True when only a random subset of starts was examined.
    pub sampled_starts: bool,
    pub samples_used: u64,
    /// The start whose distribution was found far from the reference.
    pub rejected_by: Option<usize>,
}

impl MixingVerdict {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }
}

/// Decides whether the `t`-step distributions from all starts agree to
/// within `epsilon`, by closeness tests against a reference start at
/// confidence `delta / n` each.
///
/// The reference is node 0. Starts are examined farthest-first (by BFS
/// distance from the reference), which tends to find a rejection early;
/// the first rejection ends the test. Above [`MIXING_START_CAP`] nodes a
/// uniform subset of starts is tested and the verdict covers only those.
pub fn mixing_test(g: &Graph, t: usize, epsilon: f64, delta: f64, seed: u64) -> Result<MixingVerdict> {
    g.require_connected()?;
    if !(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter("need epsilon > 0 and 0 < delta < 1".into()));
    }
    let n = g.n();
    let reference = 0;
    let sampled_starts = n > MIXING_START_CAP;
    let mut starts: Vec<usize> = if sampled_starts {
        let mut rng = stream_rng(derive_seed(seed, u64::MAX), 0);
        sample(&mut rng, n, MIXING_START_CAP).into_iter().filter(|&s| s != reference).collect()
    } else {
        (1..n).collect()
    };
    let dist = g.bfs_distances(reference);
    starts.sort_by_key(|&s| (std::cmp::Reverse(dist[s]), s));
    let per_test = delta / starts.len().max(1) as f64;
    let mut samples_used = 0;
    for (k, &s) in starts.iter().enumerate() {
        let v = pair_closeness_test(g, reference, s, t, epsilon, per_test, derive_seed(seed, s as u64))?;
        samples_used += v.samples_used;
        if !v.accepted() {
            return Ok(MixingVerdict {
                verdict: Verdict::Reject,
                reference,
                comparisons: k + 1,
                sampled_starts,
                samples_used,
                rejected_by: Some(s),
            });
        }
    }
    Ok(MixingVerdict {
        verdict: Verdict::Accept,
        reference,
        comparisons: starts.len(),
        sampled_starts,
        samples_used,
        rejected_by: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixingSearch {
    /// Smallest accepted `t`, or `t_hi + 1` when `t_hi` itself was rejected.
    pub t: usize,
    pub found: bool,
    /// `(t, accepted)` for every probe, in probe order.
    pub probes: Vec<(usize, bool)>,
}

/// Bisection over `[1, t_hi]` for the smallest `t` at which [`mixing_test`]
/// accepts, assuming acceptance is monotone in `t`. Each probe runs at
/// confidence `delta / ceil(log2 t_hi)`.
pub fn binary_search_mixing(
    g: &Graph,
    epsilon: f64,
    delta: f64,
    t_hi: usize,
    seed: u64,
) -> Result<MixingSearch> {
    if t_hi == 0 {
        return Err(Error::InvalidParameter("t_hi must be at least 1".into()));
    }
    let rounds = (t_hi as f64).log2().ceil().max(1.0);
    let per_probe = delta / rounds;
    let mut probes = Vec::new();
    let mut probe = |t: usize| -> Result<bool> {
        let ok = mixing_test(g, t, epsilon, per_probe, derive_seed(seed, t as u64))?.accepted();
        probes.push((t, ok));
        Ok(ok)
    };
    if !probe(t_hi)? {
        return Ok(MixingSearch { t: t_hi + 1, found: false, probes });
    }
    let (mut lo, mut hi) = (1, t_hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if probe(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(MixingSearch { t: lo, found: true, probes })
}
