//! Spectrum of the transition matrix and total-variation mixing time.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use super::push_distribution;
use crate::centrality::stationary;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph handled by [`spectral_info`].
pub const SPECTRAL_CAP: usize = 5000;
/// Total-variation threshold defining `t_mix`.
pub const T_MIX_EPS: f64 = 0.125;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralInfo {
    pub lambda2: f64,
    pub lambda_n: f64,
    /// `max(|lambda2|, |lambda_n|)`
    pub lambda: f64,
    /// `None` when the chain is periodic.
    pub t_mix: Option<usize>,
    pub periodic: bool,
    /// All eigenvalues, in decreasing order.
    pub eigenvalues: Vec<f64>,
}

/// Eigenvalues of `beta I + (1 - beta) D^{-1/2} A D^{-1/2}`, which has the
/// spectrum of the (lazy) transition matrix, plus the exact `t_mix` at
/// [`T_MIX_EPS`]. `tol` decides when `lambda_n` counts as `-1`.
pub fn spectral_info(g: &Graph, tol: f64) -> Result<SpectralInfo> {
    let n = g.n();
    if n > SPECTRAL_CAP {
        return Err(Error::TooLarge {
            what: "spectral decomposition",
            n,
            cap: SPECTRAL_CAP,
        });
    }
    g.require_connected()?;
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two nodes".into()));
    }
    let beta = g.laziness();
    let mut s = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        s[(u, u)] = beta;
        let du = g.degree(u) as f64;
        for &w in g.neighbors(u) {
            let dw = g.degree(w as usize) as f64;
            s[(u, w as usize)] = (1.0 - beta) / (du * dw).sqrt();
        }
    }
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let lambda2 = eigenvalues[1];
    let lambda_n = eigenvalues[n - 1];
    let lambda = lambda2.abs().max(lambda_n.abs()).min(1.0);
    let periodic = lambda_n <= -1.0 + tol;
    let t_mix = if periodic || lambda >= 1.0 - tol {
        None
    } else {
        let pi_min = stationary(g)?.pi.iter().copied().fold(1.0, f64::min);
        // d(t) <= lambda^t / pi_min bounds the scan.
        let bound = ((1.0 / (T_MIX_EPS * pi_min)).ln() / (1.0 - lambda)).ceil() as usize + 1;
        Some(mixing_time_tv(g, T_MIX_EPS, bound)?)
    };
    Ok(SpectralInfo {
        lambda2,
        lambda_n,
        lambda,
        t_mix,
        periodic,
        eigenvalues,
    })
}

/// Smallest `t` with `max_u TV(e_u P^t, pi) <= eps`, scanning up to `max_t`.
///
/// Distance to stationarity is non-increasing in `t` for every start, so
/// each start is evolved on its own until it falls below `eps`.
pub fn mixing_time_tv(g: &Graph, eps: f64, max_t: usize) -> Result<usize> {
    let pi = stationary(g)?.pi;
    let n = g.n();
    let per_start = |u: usize| -> Option<usize> {
        let mut x = vec![0.0; n];
        x[u] = 1.0;
        for t in 0..=max_t {
            let tv = 0.5 * x.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum::<f64>();
            if tv <= eps {
                return Some(t);
            }
            x = push_distribution(g, &x);
        }
        None
    };
    let times: Vec<Option<usize>> = (0..n).into_par_iter().map(per_start).collect();
    times
        .into_iter()
        .try_fold(0, |acc, t| t.map(|t| acc.max(t)))
        .ok_or(Error::NoConvergence {
            what: "total-variation mixing time",
            iterations: max_t,
            residual: f64::NAN,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn triangle_spectrum() {
        let s = spectral_info(&complete(3), 1e-9).unwrap();
        assert!((s.lambda2 + 0.5).abs() < 1e-12 && (s.lambda_n + 0.5).abs() < 1e-12);
        assert!((s.lambda - 0.5).abs() < 1e-12);
        // TV from a vertex after t steps is (2/3) (1/2)^t.
        assert_eq!(s.t_mix, Some(3));
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn even_cycle_is_periodic() {
        let s = spectral_info(&cycle(4), 1e-9).unwrap();
        assert!(s.periodic && (s.lambda - 1.0).abs() < 1e-12 && s.t_mix.is_none());
    }

    #[test]
    fn lazy_edge() {
        let s = spectral_info(&complete(2).with_laziness(0.5).unwrap(), 1e-9).unwrap();
        assert!(s.lambda2.abs() < 1e-12 && !s.periodic);
        assert_eq!(s.t_mix, Some(1));
    }

    #[test]
    fn cycle_matches_cosine_spectrum() {
        let n = 7;
        let s = spectral_info(&cycle(n), 1e-9).unwrap();
        let mut want: Vec<f64> = (0..n)
            .map(|k| (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .collect();
        want.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in s.eigenvalues.iter().zip(&want) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = path(SPECTRAL_CAP + 1);
        assert!(matches!(spectral_info(&g, 1e-9), Err(Error::TooLarge { .. })));
    }
}
