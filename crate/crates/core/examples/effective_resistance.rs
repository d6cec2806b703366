//! Effective resistance three ways: exact, from two meeting-time estimates,
//! and from the truncated walk series.

use hitlocal::estimators::{effective_resistance_meeting, EstimatorParams};
use hitlocal::exact::exact_effective_resistance;
use hitlocal::generate::generate_er;
use hitlocal::mixing::{
    effres_series_length, effres_series_partial_sums, effres_truncated_series_sampled,
    fit_series_decay, local_pair_mixing_exact,
};

fn main() -> hitlocal::Result<()> {
    let (g, _) = generate_er(60, 0.15, 4)?.largest_component();
    let (u, v) = (0, 1);
    let exact = exact_effective_resistance(&g, u, v)?;
    println!("n={} m={} exact R_eff({u},{v}) = {exact:.5}", g.n(), g.m());

    let params = EstimatorParams::practical(20_000, 1_000_000, 2);
    let est = effective_resistance_meeting(&g, u, v, &params)?;
    println!("meeting: {:.5}", est.value.expect("both directions met"));

    let t_min = local_pair_mixing_exact(&g, u, v, 0.1, 10_000)?.t_min;
    let sums = effres_series_partial_sums(&g, u, v, 4 * t_min.max(4))?;
    let decay = fit_series_decay(&sums)?;
    let ell = effres_series_length(t_min, Some((decay.alpha, decay.c)), 0.01)?;
    println!("t_min={t_min} alpha={:.3} (R^2 {:.3}) -> ell={ell}", decay.alpha, decay.r2);
    let sampled = effres_truncated_series_sampled(&g, u, v, ell, 100_000, 5)?;
    println!("sampled series: {sampled:.5}");
    Ok(())
}
