//! Monte Carlo checks against independent simulations and exact values.

use hitlocal::estimators::{cutoff_estimate, walk_sampling_estimate, CutoffOptions, Diagnostics};
use hitlocal::exact::{
    distribution_after, exact_hitting_to, hitting_time, mixing_time_tv, DEFAULT_TOL,
};
use hitlocal::generate::{generate_ba, generate_er};
use hitlocal::graph::fixtures::{complete, path, star, triangle_with_pendant};
use hitlocal::mixing::{effres_series_partial_sums, fit_series_decay, local_distance_curve};
use hitlocal::rng::stream_rng;
use hitlocal::stats::{mean, sample_sd};
use hitlocal::walks::step;
use hitlocal::{stationary, Graph};

fn er_connected(n: usize, p: f64, seed: u64) -> Graph {
    (seed..)
        .map(|s| generate_er(n, p, s).unwrap())
        .find(|g| g.is_ergodic())
        .unwrap()
}

/// Upper 1% points of the chi-square distribution.
fn chi2_crit_01(df: usize) -> f64 {
    [6.635, 9.210, 11.345, 13.277, 15.086][df - 1]
}

#[test]
fn one_step_kernel_chi_square() {
    let cases = [(complete(3), 0), (star(4), 0), (triangle_with_pendant(), 0), (path(5), 2)];
    for (k, (g, u)) in cases.iter().enumerate() {
        let draws = 100_000;
        let mut rng = stream_rng(11, k as u64);
        let mut counts = vec![0u64; g.n()];
        for _ in 0..draws {
            counts[step(g, *u, &mut rng).unwrap()] += 1;
        }
        let expect = draws as f64 / g.degree(*u) as f64;
        let mut chi2 = 0.0;
        for (w, &c) in counts.iter().enumerate() {
            if g.has_edge(*u, w) {
                chi2 += (c as f64 - expect).powi(2) / expect;
            } else {
                assert_eq!(c, 0, "step left the neighborhood");
            }
        }
        assert!(chi2 < chi2_crit_01(g.degree(*u) - 1), "case {k}: chi2 {chi2}");
    }
}

/// `(1 / pi(v)) E[sum_{t < T} (1[Y_t = v] - 1[X_t = v])]` for independent
/// walks `X` from `u` and `Y` from `v`, stopped when they first share a node.
fn single_pair_identity(g: &Graph, u: usize, v: usize, pairs: u64, seed: u64) -> (f64, f64) {
    let pi_v = stationary(g).unwrap().get(v);
    let mut rng = stream_rng(seed, 0);
    let samples: Vec<f64> = (0..pairs)
        .map(|_| {
            let (mut x, mut y) = (u, v);
            let mut acc = 0i64;
            while x != y {
                acc += (y == v) as i64 - (x == v) as i64;
                x = step(g, x, &mut rng).unwrap();
                y = step(g, y, &mut rng).unwrap();
            }
            acc as f64 / pi_v
        })
        .collect();
    (mean(&samples), sample_sd(&samples) / (pairs as f64).sqrt())
}

#[test]
fn paired_walk_identity_matches_exact() {
    let graphs = [
        (triangle_with_pendant(), 3, 1),
        (complete(6), 0, 5),
        (er_connected(15, 0.3, 5), 0, 14),
        (path(5).with_laziness(0.5).unwrap(), 0, 4),
    ];
    for (k, (g, u, v)) in graphs.iter().enumerate() {
        let exact = hitting_time(g, *u, *v).unwrap();
        let (m, se) = single_pair_identity(g, *u, *v, 100_000, 40 + k as u64);
        assert!((m - exact).abs() <= 3.0 * se, "graph {k}: {m} +- {se} vs {exact}");
    }
}

#[test]
fn cutoff_levels_concentrate() {
    let g = complete(3);
    let (u, v) = (0, 1);
    let pi = stationary(&g).unwrap();
    let (lambda, eps) = (0.5, 0.5);
    let mut within = 0;
    let mut total = 0;
    for seed in 0..20 {
        let est = cutoff_estimate(&g, u, v, lambda, eps, &CutoffOptions { seed, ..Default::default() }).unwrap();
        let Diagnostics::Cutoff { levels, per_level, .. } = est.diagnostics else { unreachable!() };
        for (i, &got) in per_level.iter().enumerate() {
            let from_v = distribution_after(&g, v, i);
            let truth = from_v[v] / pi.get(v) - from_v[u] / pi.get(u);
            let tol = eps / (4.0 * levels as f64) / pi.get(v);
            within += ((got - truth).abs() <= tol) as usize;
            total += 1;
        }
    }
    assert!(within as f64 >= 0.95 * total as f64, "{within}/{total}");
}

#[test]
fn sampling_bias_shrinks_with_cap() {
    let g = path(5).with_laziness(0.5).unwrap();
    let exact = hitting_time(&g, 0, 4).unwrap();
    assert!((exact - 32.0).abs() < 1e-9);
    let r = 100_000;
    let runs: Vec<(f64, f64, u64)> = [10u64, 100, 1000, 10_000]
        .iter()
        .map(|&cap| {
            let est = walk_sampling_estimate(&g, 0, 4, r, cap, 8).unwrap();
            let Diagnostics::Sampling { truncated, sample_variance, .. } = est.diagnostics else {
                unreachable!()
            };
            (est.value.unwrap(), (sample_variance / r as f64).sqrt(), truncated)
        })
        .collect();
    // Same seed at every cap: a walk's capped length only grows with the cap.
    for w in runs.windows(2) {
        assert!(w[0].0 <= w[1].0 && w[0].2 >= w[1].2);
    }
    assert!(exact - runs[0].0 > 10.0);
    let (last, se, truncated) = runs[3];
    assert_eq!(truncated, 0);
    assert!((last - exact).abs() <= 3.0 * se, "{last} +- {se}");
}

#[test]
fn local_distance_vanishes_after_mixing() {
    let graphs = [
        complete(8),
        triangle_with_pendant(),
        er_connected(25, 0.2, 1),
        generate_ba(30, 2, 3).unwrap(),
        path(6).with_laziness(0.5).unwrap(),
    ];
    for (k, g) in graphs.iter().enumerate() {
        let t_mix = mixing_time_tv(g, 0.125, 100_000).unwrap();
        let curve = local_distance_curve(g, 0, g.n() - 1, 4 * t_mix).unwrap();
        assert!(curve[4 * t_mix] < 0.05, "graph {k}: {}", curve[4 * t_mix]);
    }
}

#[test]
fn resistance_series_decays_geometrically() {
    let graphs = [
        complete(6),
        triangle_with_pendant(),
        er_connected(20, 0.25, 2),
        generate_ba(25, 2, 4).unwrap(),
        path(6).with_laziness(0.5).unwrap(),
    ];
    for (k, g) in graphs.iter().enumerate() {
        let sums = effres_series_partial_sums(g, 0, g.n() - 1, 60).unwrap();
        let fit = fit_series_decay(&sums).unwrap();
        assert!(fit.r2 >= 0.95 && fit.alpha < 1.0, "graph {k}: {fit:?}");
    }
}

#[test]
fn harmonic_oracle_agrees_with_simulation_on_ba() {
    let g = generate_ba(60, 3, 9).unwrap();
    let h = exact_hitting_to(&g, 0, DEFAULT_TOL).unwrap().h;
    let est = walk_sampling_estimate(&g, 59, 0, 50_000, 1_000_000, 2).unwrap();
    let Diagnostics::Sampling { sample_variance, .. } = est.diagnostics else { unreachable!() };
    let se = (sample_variance / 50_000.0).sqrt();
    assert!((est.value.unwrap() - h[59]).abs() <= 3.0 * se);
}
