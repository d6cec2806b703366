//! Node-level statistics: the stationary distribution and PageRank.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Stationary distribution of the walk, `pi[v] = deg(v) / 2m`.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDist {
    pub pi: Vec<f64>,
    /// `sum_v pi[v]^2`
    pub pi_norm_sq: f64,
}

impl StationaryDist {
    #[inline]
    pub fn get(&self, v: usize) -> f64 {
        self.pi[v]
    }
}

pub fn stationary(g: &Graph) -> Result<StationaryDist> {
    g.require_connected()?;
    let two_m = 2.0 * g.m() as f64;
    let pi: Vec<f64> = (0..g.n()).map(|v| g.degree(v) as f64 / two_m).collect();
    let pi_norm_sq = pi.iter().map(|p| p * p).sum();
    Ok(StationaryDist { pi, pi_norm_sq })
}

/// Iteration cap for [`pagerank`].
pub const PAGERANK_MAX_ITER: usize = 10_000;

/// PageRank with uniform teleportation, by power iteration until the l1
/// change between iterates is at most `tol`. Nodes without neighbors
/// redistribute their mass uniformly.
pub fn pagerank(g: &Graph, damping: f64, tol: f64) -> Result<Vec<f64>> {
    pagerank_with_limit(g, damping, tol, PAGERANK_MAX_ITER)
}

pub fn pagerank_with_limit(
    g: &Graph,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "damping must lie in (0, 1), got {damping}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let uniform = 1.0 / n as f64;
    let mut x = vec![uniform; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let dangling: f64 = (0..n).filter(|&u| g.degree(u) == 0).map(|u| x[u]).sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        next.iter_mut().for_each(|y| *y = base);
        for u in 0..n {
            let d = g.degree(u);
            if d == 0 {
                continue;
            }
            let share = damping * x[u] / d as f64;
            for &w in g.neighbors(u) {
                next[w as usize] += share;
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|y| *y /= total);
        residual = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if residual <= tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        what: "pagerank",
        iterations: max_iter,
        residual,
    })
}
