//! Exact linear-algebra oracles.
//!
//! Everything here is deterministic and intended for graphs small enough to
//! solve directly. Transition operators always include the graph's laziness
//! `beta`, so the oracles describe the same chain the walk engine simulates.

mod hitting;
mod meeting;
mod series;
mod spectral;

pub use hitting::{
    effective_resistance_hitting, effective_resistance_pinv, exact_effective_resistance,
    exact_hitting_to, hitting_matrix, hitting_second_moment, hitting_time, hitting_variance,
    laplacian_pseudoinverse, HittingVector, DEFAULT_TOL, DENSE_SOLVE_MAX, GS_MAX_ITER,
    RESISTANCE_AGREEMENT,
};
pub use meeting::{meeting_tail_curve, meeting_tail_exact, MEETING_STATE_CAP};
pub use series::{hitting_series_partial_sums, hitting_series_terms_needed, SERIES_TRUNCATION};
pub use spectral::{mixing_time_tv, spectral_info, SpectralInfo, SPECTRAL_CAP, T_MIX_EPS};

use crate::graph::Graph;

/// One step of a distribution: returns `x P` for a row vector `x`.
pub fn push_distribution(g: &Graph, x: &[f64]) -> Vec<f64> {
    let beta = g.laziness();
    let mut out: Vec<f64> = x.iter().map(|xi| beta * xi).collect();
    for (u, &xu) in x.iter().enumerate() {
        if xu == 0.0 {
            continue;
        }
        let nbrs = g.neighbors(u);
        let share = (1.0 - beta) * xu / nbrs.len() as f64;
        for &w in nbrs {
            out[w as usize] += share;
        }
    }
    out
}

/// `(P h)[u]`: expected value of `h` after one step from `u`.
#[inline]
pub(crate) fn pull_mean(g: &Graph, h: &[f64], u: usize) -> f64 {
    let nbrs = g.neighbors(u);
    let avg = nbrs.iter().map(|&w| h[w as usize]).sum::<f64>() / nbrs.len() as f64;
    let beta = g.laziness();
    beta * h[u] + (1.0 - beta) * avg
}

/// Point mass at `u` evolved for `t` steps.
pub fn distribution_after(g: &Graph, u: usize, t: usize) -> Vec<f64> {
    let mut x = vec![0.0; g.n()];
    x[u] = 1.0;
    for _ in 0..t {
        x = push_distribution(g, &x);
    }
    x
}

pub fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn push_preserves_mass_and_matches_kernel() {
        let g = path(3).with_laziness(0.25).unwrap();
        let x = distribution_after(&g, 0, 1);
        assert_eq!(x, vec![0.25, 0.75, 0.0]);
        let y = push_distribution(&g, &x);
        assert!((y.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((y[2] - 0.75 * 0.75 * 0.5).abs() < 1e-15);
    }

    #[test]
    fn pull_is_adjoint_of_push() {
        let g = triangle_with_pendant();
        let x = [0.1, 0.2, 0.3, 0.4];
        let h = [1.0, -2.0, 0.5, 3.0];
        let lhs: f64 = push_distribution(&g, &x).iter().zip(&h).map(|(a, b)| a * b).sum();
        let rhs: f64 = (0..4).map(|u| x[u] * pull_mean(&g, &h, u)).sum();
        assert!((lhs - rhs).abs() < 1e-14);
    }
}
