//! The meeting-time estimator, step by step and at scale.

use hitlocal::datasets::football;
use hitlocal::estimators::{meeting_time_estimate, meeting_time_trace, EstimatorParams};
use hitlocal::exact::hitting_time;
use hitlocal::graph::fixtures::triangle_with_pendant;

fn main() -> hitlocal::Result<()> {
    let g = triangle_with_pendant();
    let (est, trace) = meeting_time_trace(&g, 3, 1, &EstimatorParams::practical(8, 1000, 1))?;
    println!(" t  alive_u alive_v  x_v y_v  increment");
    for s in trace.iter().take(8) {
        println!(
            "{:>2}  {:>7} {:>7}  {:>3} {:>3}  {:>9.3}",
            s.t, s.alive_u, s.alive_v, s.x_v, s.y_v, s.increment
        );
    }
    println!("estimate {:?} exact {}", est.value, hitting_time(&g, 3, 1)?);

    let (g, real) = football()?;
    println!("football ({}): n={} m={}", if real { "file" } else { "surrogate" }, g.n(), g.m());
    for (u, v) in [(0, 50), (10, 100), (3, 4)] {
        let est = meeting_time_estimate(&g, u, v, &EstimatorParams::practical(10_000, 1_000_000, 7))?;
        let exact = hitting_time(&g, u, v)?;
        let value = est.value.expect("all walkers met");
        println!(
            "H({u},{v}) ~ {value:.2} (exact {exact:.2}, rel err {:.4}, {} steps)",
            (value - exact).abs() / exact,
            est.total_steps
        );
    }
    Ok(())
}
