//! Meeting-time wall time against thread count, with a determinism check.

use hitlocal::bench::{default_t_max, parallel_bench};
use hitlocal::estimators::EstimatorParams;
use hitlocal::exact::spectral_info;
use hitlocal::generate::generate_ba;

fn main() -> hitlocal::Result<()> {
    let g = generate_ba(1000, 10, 1)?;
    let t_mix = spectral_info(&g, 1e-9)?.t_mix.expect("aperiodic");
    let params = EstimatorParams::practical(10_000, default_t_max(&g, t_mix), 3);
    let rep = parallel_bench(&g, 0, 999, &params, &[1, 2, 4], 2)?;
    println!("host threads: {}", rep.available_parallelism);
    for r in &rep.rows {
        println!("{} threads: {:.3}s +- {:.3} (x{:.2})", r.threads, r.mean_seconds, r.sd_seconds, r.speedup);
    }
    println!("identical estimates: {}", rep.deterministic);
    Ok(())
}
