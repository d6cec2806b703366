//! Accuracy table over pair samplers and estimators on the football graph.

use hitlocal::bench::{run_bench, write_records, BenchConfig};
use hitlocal::datasets::football;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, _) = football()?;
    let cfg = BenchConfig {
        graph_id: "football".into(),
        pairs: 10,
        walks: 2000,
        seed: 1,
        ..BenchConfig::default()
    };
    let out = run_bench(&g, &cfg)?;
    println!("{:<16} {:<9} {:>9} {:>9}", "sampler", "algorithm", "mean", "sd");
    for s in &out.summary {
        println!(
            "{:<16} {:<9} {:>9.4} {:>9.4}",
            s.sampler,
            s.algorithm.as_str(),
            s.mean_rel_error.unwrap_or(f64::NAN),
            s.sd_rel_error.unwrap_or(f64::NAN)
        );
    }
    let mut csv = Vec::new();
    write_records(&mut csv, &out.records[..3])?;
    print!("\nfirst rows:\n{}", String::from_utf8(csv)?);
    Ok(())
}
