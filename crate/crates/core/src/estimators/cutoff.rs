//! Hitting times from a truncated spectral series.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Diagnostics, HtEstimate};
use crate::centrality::stationary;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::derive_seed;
use crate::walks::endpoint_counts;

/// How the count of walks from `v` ending at `u` is turned into an estimate
/// of `P^i[u, v] / pi(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutoffScaling {
    /// `T_u / (r pi(u))`. By reversibility `P^i[v, u] / pi(u)` equals
    /// `P^i[u, v] / pi(v)`, so this is unbiased on every graph.
    #[default]
    Reversible,
    /// `T_u / (r pi(v))`, the same factor for both probes. Unbiased only
    /// when `deg(u) = deg(v)`.
    Literal,
}

/// Overrides for [`cutoff_estimate`].
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CutoffOptions {
    /// Replaces the number of levels `ell`.
    pub levels: Option<usize>,
    /// Replaces the walks per level `r`.
    pub walks_per_level: Option<u64>,
    /// Caps `r` (applied after the formula, ignored with `walks_per_level`).
    pub max_walks_per_level: Option<u64>,
    pub scaling: CutoffScaling,
    pub seed: u64,
}

/// `ell = max(1, ceil(log(n / (eps (1 - lambda))) / log(1 / lambda)))`.
pub fn cutoff_levels(n: usize, lambda: f64, epsilon: f64) -> Result<usize> {
    check_inputs(lambda, epsilon)?;
    if lambda == 0.0 {
        return Ok(1);
    }
    let ell = ((n as f64 / (epsilon * (1.0 - lambda))).ln() / (1.0 / lambda).ln()).ceil();
    Ok(if ell.is_finite() && ell >= 1.0 { ell as usize } else { 1 })
}

/// `r = 32 ell^2 ln(40 ell) / (eps^2 pi(v)^2)`, unrounded.
pub fn cutoff_walks_per_level(ell: usize, epsilon: f64, pi_v: f64) -> f64 {
    let l = ell as f64;
    32.0 * l * l * (40.0 * l).ln() / (epsilon * epsilon * pi_v * pi_v)
}

fn check_inputs(lambda: f64, epsilon: f64) -> Result<()> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "lambda must lie in [0, 1) (periodic or disconnected chain?), got {lambda}"
        )));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    Ok(())
}

/// Estimates `H(u, v)` as `sum_{i<ell} (p_{i,v} - p_{i,u})`, where the
/// level-`i` terms come from `r` fresh walks of length `i` started at `v`.
///
/// Level `i` draws its walks from seed `derive_seed(seed, i)`, so levels are
/// independent and the result does not depend on thread count.
pub fn cutoff_estimate(
    g: &Graph,
    u: usize,
    v: usize,
    lambda: f64,
    epsilon: f64,
    opts: &CutoffOptions,
) -> Result<HtEstimate> {
    check_inputs(lambda, epsilon)?;
    g.check_node(u)?;
    g.check_node(v)?;
    let pi = stationary(g)?;
    if u == v {
        return Ok(HtEstimate::zero());
    }
    let start = Instant::now();
    let levels = match opts.levels {
        Some(0) => return Err(Error::InvalidParameter("need at least one level".into())),
        Some(l) => l,
        None => cutoff_levels(g.n(), lambda, epsilon)?,
    };
    let theoretical_walks = cutoff_walks_per_level(levels, epsilon, pi.get(v));
    let r = match opts.walks_per_level {
        Some(0) => return Err(Error::InvalidParameter("need at least one walk per level".into())),
        Some(r) => r,
        None => {
            let capped = match opts.max_walks_per_level {
                Some(cap) => theoretical_walks.min(cap as f64),
                None => theoretical_walks,
            };
            if !(capped < u64::MAX as f64) {
                return Err(Error::InvalidParameter(format!(
                    "{theoretical_walks:e} walks per level; set walks_per_level or max_walks_per_level"
                )));
            }
            (capped.ceil() as u64).max(1)
        }
    };
    let scale_v = 1.0 / pi.get(v);
    let scale_u = match opts.scaling {
        CutoffScaling::Reversible => 1.0 / pi.get(u),
        CutoffScaling::Literal => scale_v,
    };
    let per_level: Vec<f64> = (0..levels)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let counts = endpoint_counts(g, v, i, r, derive_seed(opts.seed, i as u64), 0)?;
            Ok((scale_v * counts[v] as f64 - scale_u * counts[u] as f64) / r as f64)
        })
        .collect::<Result<_>>()?;
    let value = per_level.iter().sum();
    let steps: u64 = (0..levels as u64).map(|i| i * r).sum();
    Ok(HtEstimate {
        value: Some(value),
        failed: false,
        walks_used: r * levels as u64,
        total_steps: steps,
        wall_time: start.elapsed(),
        diagnostics: Diagnostics::Cutoff {
            levels,
            walks_per_level: r,
            theoretical_walks,
            per_level,
        },
    })
}
