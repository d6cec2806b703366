//! Effective resistance as a truncated walk series.

use crate::error::{Error, Result};
use crate::exact::push_distribution;
use crate::graph::Graph;
use crate::rng::derive_seed;
use crate::walks::endpoint_counts;

/// `S_k = sum_{i<k} chi^T P^i D^{-1} chi` for `k = 1..=ell`, with
/// `chi = e_u - e_v`. On a lazy chain the limit is `R / (1 - beta)`.
pub fn effres_series_partial_sums(g: &Graph, u: usize, v: usize, ell: usize) -> Result<Vec<f64>> {
    g.check_node(u)?;
    g.check_node(v)?;
    g.require_connected()?;
    let n = g.n();
    let (du, dv) = (g.degree(u) as f64, g.degree(v) as f64);
    let mut xu = vec![0.0; n];
    let mut xv = vec![0.0; n];
    xu[u] = 1.0;
    xv[v] = 1.0;
    let mut sum = 0.0;
    let mut out = Vec::with_capacity(ell);
    for i in 0..ell {
        if i > 0 {
            xu = push_distribution(g, &xu);
            xv = push_distribution(g, &xv);
        }
        sum += (xu[u] - xv[u]) / du + (xv[v] - xu[v]) / dv;
        out.push(sum);
    }
    Ok(out)
}

/// `sum_{i<ell} chi^T P^i D^{-1} chi` from exact distributions.
pub fn effres_truncated_series(g: &Graph, u: usize, v: usize, ell: usize) -> Result<f64> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    Ok(*effres_series_partial_sums(g, u, v, ell)?.last().unwrap())
}

/// The same sum with `P^i` rows estimated from `r` walks per start and
/// length. Length `i` uses seeds derived from `(seed, i)`.
pub fn effres_truncated_series_sampled(
    g: &Graph,
    u: usize,
    v: usize,
    ell: usize,
    r: u64,
    seed: u64,
) -> Result<f64> {
    if ell == 0 || r == 0 {
        return Err(Error::InvalidParameter("need ell >= 1 and r >= 1".into()));
    }
    g.check_node(u)?;
    g.check_node(v)?;
    g.require_connected()?;
    if u == v {
        return Ok(0.0);
    }
    let (du, dv) = (g.degree(u) as f64, g.degree(v) as f64);
    let rf = r as f64;
    let mut sum = 0.0;
    for i in 0..ell {
        let s = derive_seed(seed, i as u64);
        let cu = endpoint_counts(g, u, i, r, s, 0)?;
        let cv = endpoint_counts(g, v, i, r, s, 1 << 40)?;
        sum += (cu[u] as f64 - cv[u] as f64) / (rf * du) + (cv[v] as f64 - cu[v] as f64) / (rf * dv);
    }
    Ok(sum)
}

/// Fitted `|S_{k+1} - S_k| ~ C alpha^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesDecay {
    pub alpha: f64,
    pub c: f64,
    pub r2: f64,
}

/// Log-linear fit of the absolute series terms recovered from partial sums.
/// Terms that vanish to rounding are dropped.
pub fn fit_series_decay(partial_sums: &[f64]) -> Result<SeriesDecay> {
    let terms: Vec<(f64, f64)> = partial_sums
        .windows(2)
        .enumerate()
        .map(|(k, w)| ((k + 1) as f64, (w[1] - w[0]).abs()))
        .filter(|&(_, d)| d > 1e-14)
        .collect();
    if terms.len() < 3 {
        return Err(Error::InvalidParameter("need at least three non-zero series terms".into()));
    }
    let xs: Vec<f64> = terms.iter().map(|t| t.0).collect();
    let ly: Vec<f64> = terms.iter().map(|t| t.1.ln()).collect();
    let fit = crate::stats::linear_fit(&xs, &ly);
    Ok(SeriesDecay {
        alpha: fit.slope.exp(),
        c: fit.intercept.exp(),
        r2: fit.r2,
    })
}

/// Series length `t_min + log(C / (eps' (1 - alpha))) / (-log alpha)` with
/// `eps' = epsilon / 4`, or just `t_min` when no `(alpha, C)` is supplied.
pub fn effres_series_length(t_min: usize, decay: Option<(f64, f64)>, epsilon: f64) -> Result<usize> {
    match decay {
        None => Ok(t_min.max(1)),
        Some((alpha, c)) => {
            if !(0.0 < alpha && alpha < 1.0 && c > 0.0 && epsilon > 0.0) {
                return Err(Error::InvalidParameter("need 0 < alpha < 1, C > 0, epsilon > 0".into()));
            }
            let extra = (c / (epsilon / 4.0 * (1.0 - alpha))).ln() / -alpha.ln();
            Ok(t_min + extra.max(0.0).ceil() as usize)
        }
    }
}
