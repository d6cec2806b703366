//! Growth of the barbell hitting time and of the sampling variance.

use hitlocal::bench::lower_bound_experiment;

fn main() -> hitlocal::Result<()> {
    let rep = lower_bound_experiment(&[4, 6, 8, 10, 12], &[10, 20], 100, 1)?;
    println!(" n  nodes  r       H     Var(T)   Var(mean)*r");
    for p in &rep.points {
        println!(
            "{:>2} {:>6} {:>2} {:>7.0} {:>10.0} {:>12.0}",
            p.n,
            p.nodes,
            p.r,
            p.exact_h,
            p.exact_var,
            p.var_of_means * p.r as f64
        );
    }
    println!("H ~ n^{:.2}, Var ~ n^{:.2}", rep.h_fit.slope, rep.var_fit.slope);
    Ok(())
}
