//! Sample-based mixing tests and the binary search for a mixing time.

use hitlocal::exact::spectral_info;
use hitlocal::generate::generate_barbell;
use hitlocal::graph::fixtures::complete;
use hitlocal::mixing::{binary_search_mixing, local_distance_curve, mixing_test};

fn main() -> hitlocal::Result<()> {
    let k3 = complete(3);
    let m = mixing_test(&k3, 20, 0.5, 0.1, 1)?;
    println!("K_3, t=20: {:?} after {} comparisons, {} samples", m.verdict, m.comparisons, m.samples_used);

    let (bb, lm) = generate_barbell(4)?;
    let m = mixing_test(&bb, 5, 0.5, 0.1, 1)?;
    println!("barbell n=4, t=5: {:?} (rejected by start {:?})", m.verdict, m.rejected_by);
    let d = local_distance_curve(&bb, lm.clique.start, lm.un, 5)?;
    println!("exact l1 distance clique vs star center at t=5: {:.3}", d[5]);

    // Every probe walks t steps from each start, so keep t_hi modest.
    for (name, g, t_hi) in [("K_10", complete(10), 64), ("barbell n=4", bb, 400)] {
        let s = binary_search_mixing(&g, 0.5, 0.1, t_hi, 2)?;
        println!(
            "{name}: sampled t={} ({} probes), exact TV t_mix={:?}",
            s.t,
            s.probes.len(),
            spectral_info(&g, 1e-9)?.t_mix
        );
    }
    Ok(())
}
