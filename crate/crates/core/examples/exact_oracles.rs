//! Ground truth from linear algebra: hitting times, their variance,
//! effective resistance, the spectrum, and the exact mixing time.

use hitlocal::exact::{
    exact_effective_resistance, hitting_matrix, hitting_time, hitting_variance, spectral_info,
    DEFAULT_TOL,
};
use hitlocal::graph::fixtures::{complete, cycle, path, star};

fn main() -> hitlocal::Result<()> {
    let p3 = path(3);
    println!("P_3: H(0,2)={} H(0,1)={}", hitting_time(&p3, 0, 2)?, hitting_time(&p3, 0, 1)?);
    println!("K_6: H(0,1)={}", hitting_time(&complete(6), 0, 1)?);
    let s = star(4);
    println!("K_1,4: center->leaf {} leaf->leaf {}", hitting_time(&s, 0, 1)?, hitting_time(&s, 1, 2)?);
    println!("C_8 opposite: {}", hitting_time(&cycle(8), 0, 4)?);
    println!("P_3 Var[T(0,2)] = {}", hitting_variance(&p3, 0, 2)?);

    let k4 = complete(4);
    println!("K_4 R_eff = {}", exact_effective_resistance(&k4, 0, 1)?);
    println!("H matrix of P_3:\n{}", hitting_matrix(&p3, DEFAULT_TOL)?);

    let spec = spectral_info(&complete(10), 1e-9)?;
    println!("K_10: lambda={:.4} t_mix={:?}", spec.lambda, spec.t_mix);
    // An even cycle is periodic; the lazy version is not.
    println!("C_6 periodic: {}", spectral_info(&cycle(6), 1e-9)?.periodic);
    let lazy = cycle(6).with_laziness(0.5)?;
    println!("lazy C_6 t_mix: {:?}", spectral_info(&lazy, 1e-9)?.t_mix);
    Ok(())
}
