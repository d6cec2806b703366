//! Spectral series for hitting times.

use super::push_distribution;
use crate::centrality::stationary;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The series is cut once `lambda^i n^{3/2} / (1 - lambda)` drops below this.
pub const SERIES_TRUNCATION: f64 = 1e-5;

/// Number of terms after which the tail bound `lambda^i n^{3/2} / (1 - lambda)`
/// is below [`SERIES_TRUNCATION`].
pub fn hitting_series_terms_needed(n: usize, lambda: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!("lambda must lie in [0, 1), got {lambda}")));
    }
    let scale = (n as f64).powf(1.5) / (1.0 - lambda);
    let mut i = 0usize;
    let mut bound = scale;
    while bound >= SERIES_TRUNCATION {
        i += 1;
        bound *= lambda;
    }
    Ok(i)
}

/// Partial sums `S_k = sum_{i<k} (P^i[v,v] - P^i[u,v]) / pi(v)` for
/// `k = 1..=terms`. `S_k -> H(u, v)` on aperiodic chains.
pub fn hitting_series_partial_sums(g: &Graph, u: usize, v: usize, terms: usize) -> Result<Vec<f64>> {
    g.check_node(u)?;
    g.check_node(v)?;
    let pi_v = stationary(g)?.get(v);
    let n = g.n();
    let mut xu = vec![0.0; n];
    let mut xv = vec![0.0; n];
    xu[u] = 1.0;
    xv[v] = 1.0;
    let mut sum = 0.0;
    let mut out = Vec::with_capacity(terms);
    for i in 0..terms {
        if i > 0 {
            xu = push_distribution(g, &xu);
            xv = push_distribution(g, &xv);
        }
        sum += (xv[v] - xu[v]) / pi_v;
        out.push(sum);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_hitting_to;
    use crate::graph::fixtures::*;

    #[test]
    fn terms_needed() {
        assert_eq!(hitting_series_terms_needed(3, 0.0).unwrap(), 1);
        // 3^{1.5} / 0.5 * 0.5^i < 1e-5 first at i = 20 (2^20 > 1.04e6).
        assert_eq!(hitting_series_terms_needed(3, 0.5).unwrap(), 20);
        assert!(hitting_series_terms_needed(3, 1.0).is_err());
    }

    #[test]
    fn converges_on_pendant_triangle() {
        let g = triangle_with_pendant();
        let exact = exact_hitting_to(&g, 3, 1e-12).unwrap().h[1];
        let s = hitting_series_partial_sums(&g, 1, 3, 400).unwrap();
        assert!((s[399] - exact).abs() < 1e-8);
        // First term is 1/pi(v) since P^0 is the identity.
        assert!((s[0] - 8.0).abs() < 1e-15);
    }
}
