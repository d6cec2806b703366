//! Hitting times from annihilating pairs of walks.

use std::time::Instant;

use super::{Diagnostics, EstimatorParams, HtEstimate, DEFAULT_WALKS};
use crate::centrality::{stationary, StationaryDist};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::derive_seed;
use crate::walks::WalkEnsemble;

/// Streams of the `v` ensemble start here, clear of the `u` ensemble's.
const V_STREAM_BASE: u64 = 1 << 32;

/// Step cap and ensemble size prescribed by the accuracy analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoreticalParams {
    /// `100 t_mix ln(n / (pi_u pi_v)) / ||pi||^2` before rounding.
    pub t_max_real: f64,
    pub t_max: usize,
    /// `2 t_max^2 ln n / (pi_v^2 eps^2)` evaluated at the rounded `t_max`.
    pub walks_real: f64,
    pub walks: f64,
}

pub fn theoretical_params(
    g: &Graph,
    u: usize,
    v: usize,
    epsilon: f64,
    t_mix: usize,
) -> Result<TheoreticalParams> {
    let pi = stationary(g)?;
    g.check_node(u)?;
    g.check_node(v)?;
    theoretical_from(&pi, g.n(), u, v, epsilon, t_mix)
}

fn theoretical_from(
    pi: &StationaryDist,
    n: usize,
    u: usize,
    v: usize,
    epsilon: f64,
    t_mix: usize,
) -> Result<TheoreticalParams> {
    if t_mix == 0 || !(epsilon > 0.0) {
        return Err(Error::InvalidParameter("need t_mix >= 1 and epsilon > 0".into()));
    }
    let (pu, pv) = (pi.get(u), pi.get(v));
    let nf = n as f64;
    let t_max_real = 100.0 * t_mix as f64 * (nf / (pu * pv)).ln() / pi.pi_norm_sq;
    let t_max = t_max_real.ceil() as usize;
    let walks_real = 2.0 * (t_max as f64).powi(2) * nf.ln() / (pv * pv * epsilon * epsilon);
    Ok(TheoreticalParams {
        t_max_real,
        t_max,
        walks_real,
        walks: walks_real.ceil(),
    })
}

/// State of the estimator at one step, recorded before the walkers move.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeetingStep {
    pub t: usize,
    pub alive_u: usize,
    pub alive_v: usize,
    /// Count of `u`-walkers at `v` before elimination.
    pub x_v: usize,
    pub y_v: usize,
    pub eliminated_u: usize,
    pub eliminated_v: usize,
    /// `(y_v - x_v) / (walks * pi(v))`
    pub increment: f64,
}

/// Estimates `H(u, v)` from `walks` pairs of annihilating walks.
///
/// At each step `t = 0..=t_max`, walkers of the two ensembles sharing a node
/// are removed in pairs (lowest ids first), the difference of visits to `v`
/// is accumulated, and the survivors move. The run fails if `u`-walkers
/// remain after `t_max`. Once both ensembles are empty the remaining
/// steps contribute nothing and are skipped.
///
/// `t_max` defaults to the theoretical value, which needs `t_mix`.
pub fn meeting_time_estimate(
    g: &Graph,
    u: usize,
    v: usize,
    params: &EstimatorParams,
) -> Result<HtEstimate> {
    run(g, u, v, params, None)
}

/// Like [`meeting_time_estimate`], also returning the per-step record.
pub fn meeting_time_trace(
    g: &Graph,
    u: usize,
    v: usize,
    params: &EstimatorParams,
) -> Result<(HtEstimate, Vec<MeetingStep>)> {
    let mut trace = Vec::new();
    let est = run(g, u, v, params, Some(&mut trace))?;
    Ok((est, trace))
}

fn run(
    g: &Graph,
    u: usize,
    v: usize,
    params: &EstimatorParams,
    mut trace: Option<&mut Vec<MeetingStep>>,
) -> Result<HtEstimate> {
    params.validate()?;
    g.check_node(u)?;
    g.check_node(v)?;
    let pi = stationary(g)?;
    if u == v {
        return Ok(HtEstimate::zero());
    }
    let start = Instant::now();
    let theoretical = params
        .t_mix
        .map(|tm| theoretical_from(&pi, g.n(), u, v, params.epsilon, tm))
        .transpose()?;
    let t_max = match (params.t_max, theoretical) {
        (Some(t), _) => t,
        (None, Some(th)) => th.t_max,
        (None, None) => {
            return Err(Error::InvalidParameter(
                "meeting-time estimator needs t_max or t_mix".into(),
            ))
        }
    };
    let walks = params.walks.unwrap_or(DEFAULT_WALKS);
    let seed = derive_seed(params.seed, 0x6d65_6574);
    let mut xs = WalkEnsemble::new(g, u, walks, seed, 0)?;
    let mut ys = WalkEnsemble::new(g, v, walks, seed, V_STREAM_BASE)?;
    let scale = 1.0 / (walks as f64 * pi.get(v));

    let n = g.n();
    let mut cx = vec![0u32; n];
    let mut cy = vec![0u32; n];
    let mut touched: Vec<usize> = Vec::new();
    // y_v - x_v summed over steps; elimination leaves the difference intact,
    // so the running total stays an exact integer.
    let mut diff_sum: i64 = 0;
    let mut last_step = 0;

    for t in 0..=t_max {
        if xs.alive_count() == 0 && ys.alive_count() == 0 {
            break;
        }
        last_step = t;
        for (_, w) in xs.positions() {
            if cx[w] == 0 && cy[w] == 0 {
                touched.push(w);
            }
            cx[w] += 1;
        }
        for (_, w) in ys.positions() {
            if cx[w] == 0 && cy[w] == 0 {
                touched.push(w);
            }
            cy[w] += 1;
        }
        let (x_v, y_v) = (cx[v] as i64, cy[v] as i64);
        diff_sum += y_v - x_v;
        for &w in &touched {
            let z = cx[w].min(cy[w]);
            cx[w] = z;
            cy[w] = z;
        }
        let (alive_u, alive_v) = (xs.alive_count(), ys.alive_count());
        let eliminated_u = xs.remove_where(|w| take(&mut cx[w]));
        let eliminated_v = ys.remove_where(|w| take(&mut cy[w]));
        assert_eq!(eliminated_u, eliminated_v, "elimination must remove walkers in pairs");
        for &w in &touched {
            cx[w] = 0;
            cy[w] = 0;
        }
        touched.clear();
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(MeetingStep {
                t,
                alive_u,
                alive_v,
                x_v: x_v as usize,
                y_v: y_v as usize,
                eliminated_u,
                eliminated_v,
                increment: (y_v - x_v) as f64 * scale,
            });
        }
        xs.advance(g);
        ys.advance(g);
    }
    let survivors = xs.alive_count();
    assert_eq!(survivors, ys.alive_count(), "ensembles must stay the same size");
    let failed = survivors > 0;
    Ok(HtEstimate {
        value: (!failed).then_some(diff_sum as f64 * scale),
        failed,
        walks_used: 2 * walks as u64,
        total_steps: xs.steps() + ys.steps(),
        wall_time: start.elapsed(),
        diagnostics: Diagnostics::Meeting {
            t_max,
            last_step,
            survivors,
            theoretical,
        },
    })
}

#[inline]
fn take(budget: &mut u32) -> bool {
    if *budget > 0 {
        *budget -= 1;
        true
    } else {
        false
    }
}

/// Effective resistance from two meeting-time estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceEstimate {
    /// `None` when either direction failed.
    pub value: Option<f64>,
    pub forward: HtEstimate,
    pub backward: HtEstimate,
}

/// `(H~(u, v) + H~(v, u)) / 2m`, each direction run at accuracy
/// `epsilon * m / 2` with an independent seed.
pub fn effective_resistance_meeting(
    g: &Graph,
    u: usize,
    v: usize,
    params: &EstimatorParams,
) -> Result<ResistanceEstimate> {
    let m = g.m() as f64;
    let inner = |seed_key: u64| EstimatorParams {
        epsilon: params.epsilon * m / 2.0,
        seed: derive_seed(params.seed, seed_key),
        ..params.clone()
    };
    let forward = meeting_time_estimate(g, u, v, &inner(1))?;
    let backward = meeting_time_estimate(g, v, u, &inner(2))?;
    let value = match (forward.value, backward.value) {
        (Some(a), Some(b)) => Some((a + b) / (2.0 * m)),
        _ => None,
    };
    Ok(ResistanceEstimate {
        value,
        forward,
        backward,
    })
}
