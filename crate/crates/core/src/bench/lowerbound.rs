//! Hitting-time and sampling-variance growth on barbell graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{walk_sampling_estimate, Diagnostics};
use crate::exact::{exact_hitting_to, hitting_second_moment, DEFAULT_TOL};
use crate::generate::generate_barbell;
use crate::rng::derive_seed;
use crate::stats::{mean, power_law_fit, sample_var, LineFit};

/// One `(n, r)` cell of the study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundPoint {
    pub n: usize,
    pub nodes: usize,
    pub r: u64,
    pub repeats: usize,
    /// `H(u_1, u_n)` from the linear system.
    pub exact_h: f64,
    /// Variance of a single first-passage time, from the second moment.
    pub exact_var: f64,
    pub mean_of_means: f64,
    /// Empirical variance of the `r`-walk mean over `repeats` runs.
    pub var_of_means: f64,
    /// `exact_var / r`.
    pub predicted_var_of_mean: f64,
    /// Single-walk sample variance averaged over the runs (needs `r >= 2`).
    pub pooled_single_var: Option<f64>,
    pub truncated: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundReport {
    pub points: Vec<LowerBoundPoint>,
    /// Power-law fit of `H(u_1, u_n)` against `n`.
    pub h_fit: LineFit,
    /// Power-law fit of the exact single-walk variance against `n`.
    pub var_fit: LineFit,
    /// Power-law fit of `r * var_of_means` against `n`, for the largest `r`.
    pub empirical_var_fit: Option<LineFit>,
}

/// For each barbell size `n`, solves for `H(u_1, u_n)` and the variance of
/// the first-passage time, then runs the walk-sampling estimator `repeats`
/// times with each `r` to measure the variance of its mean. Walks are capped
/// at `1000 H` steps, far into the tail.
pub fn lower_bound_experiment(
    n_list: &[usize],
    r_list: &[u64],
    repeats: usize,
    seed: u64,
) -> Result<LowerBoundReport> {
    if n_list.len() < 2 || r_list.is_empty() || repeats < 2 {
        return Err(Error::InvalidParameter(
            "need at least two sizes, one walk count and two repeats".into(),
        ));
    }
    let mut points = Vec::new();
    let mut exact = Vec::new();
    for &n in n_list {
        let (g, lm) = generate_barbell(n)?;
        let h = exact_hitting_to(&g, lm.un, DEFAULT_TOL)?.h;
        let s = hitting_second_moment(&g, lm.un, DEFAULT_TOL)?;
        let (eh, ev) = (h[lm.u1], s[lm.u1] - h[lm.u1] * h[lm.u1]);
        exact.push((n as f64, eh, ev));
        let cap = (1000.0 * eh).ceil() as u64;
        for (ri, &r) in r_list.iter().enumerate() {
            let runs: Vec<(f64, f64, u64)> = (0..repeats)
                .into_par_iter()
                .map(|k| {
                    let key = ((n as u64) << 48) ^ ((ri as u64) << 32) ^ k as u64;
                    let est = walk_sampling_estimate(&g, lm.u1, lm.un, r, cap, derive_seed(seed, key))?;
                    let (var, trunc) = match est.diagnostics {
                        Diagnostics::Sampling { sample_variance, truncated, .. } => (sample_variance, truncated),
                        _ => (f64::NAN, 0),
                    };
                    Ok((est.value.unwrap_or(f64::NAN), var, trunc))
                })
                .collect::<Result<_>>()?;
            let means: Vec<f64> = runs.iter().map(|x| x.0).collect();
            let vars: Vec<f64> = runs.iter().map(|x| x.1).collect();
            points.push(LowerBoundPoint {
                n,
                nodes: g.n(),
                r,
                repeats,
                exact_h: eh,
                exact_var: ev,
                mean_of_means: mean(&means),
                var_of_means: sample_var(&means),
                predicted_var_of_mean: ev / r as f64,
                pooled_single_var: (r >= 2).then(|| mean(&vars)),
                truncated: runs.iter().map(|x| x.2).sum(),
            });
        }
    }
    let ns: Vec<f64> = exact.iter().map(|e| e.0).collect();
    let hs: Vec<f64> = exact.iter().map(|e| e.1).collect();
    let vs: Vec<f64> = exact.iter().map(|e| e.2).collect();
    let r_top = *r_list.iter().max().unwrap();
    let emp: Vec<f64> = points
        .iter()
        .filter(|p| p.r == r_top)
        .map(|p| p.var_of_means * r_top as f64)
        .collect();
    let empirical_var_fit = emp.iter().all(|&x| x > 0.0).then(|| power_law_fit(&ns, &emp));
    Ok(LowerBoundReport {
        points,
        h_fit: power_law_fit(&ns, &hs),
        var_fit: power_law_fit(&ns, &vs),
        empirical_var_fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_hitting_times() {
        let rep = lower_bound_experiment(&[4, 5, 6], &[4], 4, 1).unwrap();
        // H(u_1, u_n) = (n - 1)(n^2 + 1) on this construction.
        for (p, want) in rep.points.iter().zip([51.0, 104.0, 185.0]) {
            assert!((p.exact_h - want).abs() < 1e-6, "{} vs {want}", p.exact_h);
        }
        assert!((rep.points[0].exact_var - 3478.0).abs() < 1e-4);
        assert_eq!(rep.points[0].truncated, 0);
    }

    #[test]
    fn variance_of_mean_scales_as_one_over_r() {
        let rep = lower_bound_experiment(&[4, 5], &[1, 16], 400, 2).unwrap();
        for p in &rep.points {
            let ratio = p.var_of_means / p.predicted_var_of_mean;
            assert!((0.6..1.6).contains(&ratio), "n={} r={} ratio {ratio}", p.n, p.r);
        }
    }
}
