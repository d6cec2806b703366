//! The truncated-series (cutoff) estimator against the exact partial sums.

use hitlocal::estimators::{cutoff_estimate, cutoff_levels, cutoff_walks_per_level, CutoffOptions};
use hitlocal::exact::{hitting_series_partial_sums, hitting_time, spectral_info};
use hitlocal::graph::fixtures::complete;
use hitlocal::stationary;

fn main() -> hitlocal::Result<()> {
    let g = complete(10);
    let (u, v) = (0, 1);
    let lambda = spectral_info(&g, 1e-9)?.lambda;
    let h = hitting_time(&g, u, v)?;
    let eps = 0.1 * h;
    let ell = cutoff_levels(g.n(), lambda, eps)?;
    let r = cutoff_walks_per_level(ell, eps, stationary(&g)?.get(v));
    println!("K_10: lambda={lambda:.4} H={h} eps={eps} levels={ell} theoretical r={r:.0}");

    let sums = hitting_series_partial_sums(&g, u, v, ell)?;
    println!("exact truncated sum {:.6} (bias {:.2e})", sums[ell - 1], h - sums[ell - 1]);

    for seed in 0..5 {
        let opts = CutoffOptions { seed, ..CutoffOptions::default() };
        let est = cutoff_estimate(&g, u, v, lambda, eps, &opts)?;
        println!("seed {seed}: {:.4}", est.value.unwrap());
    }
    Ok(())
}
