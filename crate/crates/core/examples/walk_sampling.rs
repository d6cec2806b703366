//! Plain Monte Carlo: the mean of capped first-passage times.

use hitlocal::estimators::{walk_sampling_estimate, Diagnostics};
use hitlocal::exact::{hitting_time, hitting_variance};
use hitlocal::generate::generate_barbell;

fn main() -> hitlocal::Result<()> {
    let (g, lm) = generate_barbell(6)?;
    let (u, v) = (lm.u1, lm.un);
    let h = hitting_time(&g, u, v)?;
    let sd = hitting_variance(&g, u, v)?.sqrt();
    println!("barbell n=6: H={h} sd of one walk={sd:.1}");
    for r in [1u64, 10, 100, 1000, 10_000] {
        let est = walk_sampling_estimate(&g, u, v, r, 1_000_000, 3)?;
        let Diagnostics::Sampling { truncated, .. } = est.diagnostics else { unreachable!() };
        println!(
            "r={r:>6}: {:>9.2}  (expected sd {:>7.2}, truncated {truncated})",
            est.value.unwrap(),
            sd / (r as f64).sqrt()
        );
    }
    Ok(())
}
