//! Exact meeting-time tails on the product chain.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest number of joint states `n^2` evolved by [`meeting_tail_curve`].
pub const MEETING_STATE_CAP: usize = 1_000_000;

/// `Pr[T > t]` where `T` is the first time two independent walks started at
/// `u` and `v` occupy the same node.
pub fn meeting_tail_exact(g: &Graph, u: usize, v: usize, t: usize) -> Result<f64> {
    Ok(meeting_tail_curve(g, u, v, t)?[t])
}

/// `Pr[T > s]` for `s = 0..=t_max`.
///
/// Evolves the joint law of the pair, `Q <- P^T Q P`, removing the diagonal
/// mass after every step.
pub fn meeting_tail_curve(g: &Graph, u: usize, v: usize, t_max: usize) -> Result<Vec<f64>> {
    g.check_node(u)?;
    g.check_node(v)?;
    let n = g.n();
    if n.saturating_mul(n) > MEETING_STATE_CAP {
        return Err(Error::TooLarge {
            what: "meeting-time product chain",
            n,
            cap: MEETING_STATE_CAP,
        });
    }
    if u == v {
        return Ok(vec![0.0; t_max + 1]);
    }
    if (0..n).any(|x| g.degree(x) == 0) {
        return Err(Error::IsolatedNode((0..n).find(|&x| g.degree(x) == 0).unwrap()));
    }
    let beta = g.laziness();
    let mut q = vec![0.0; n * n];
    q[u * n + v] = 1.0;
    let mut half = vec![0.0; n * n];
    let mut out = Vec::with_capacity(t_max + 1);
    out.push(1.0);
    for _ in 0..t_max {
        // First walker moves: half[a, y] = sum_x q[x, y] P[x, a].
        half.iter_mut().for_each(|x| *x = 0.0);
        for x in 0..n {
            let row = &q[x * n..(x + 1) * n];
            if row.iter().all(|&p| p == 0.0) {
                continue;
            }
            let nbrs = g.neighbors(x);
            let share = (1.0 - beta) / nbrs.len() as f64;
            for &a in nbrs {
                let dst = &mut half[a as usize * n..(a as usize + 1) * n];
                dst.iter_mut().zip(row).for_each(|(d, s)| *d += share * s);
            }
            if beta > 0.0 {
                let dst = &mut half[x * n..(x + 1) * n];
                dst.iter_mut().zip(row).for_each(|(d, s)| *d += beta * s);
            }
        }
        // Second walker moves: q[a, b] = sum_y half[a, y] P[y, b].
        for a in 0..n {
            let src = &half[a * n..(a + 1) * n];
            let dst = &mut q[a * n..(a + 1) * n];
            dst.iter_mut().zip(src).for_each(|(d, s)| *d = beta * s);
            for (y, &p) in src.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let nbrs = g.neighbors(y);
                let share = (1.0 - beta) * p / nbrs.len() as f64;
                for &b in nbrs {
                    dst[b as usize] += share;
                }
            }
            dst[a] = 0.0;
        }
        out.push(q.iter().sum());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn triangle_first_steps() {
        // From (0, 1) the four equally likely joint moves are (1,0), (1,2),
        // (2,0), (2,2); only the last one meets.
        let c = meeting_tail_curve(&complete(3), 0, 1, 3).unwrap();
        assert_eq!(c[0], 1.0);
        assert!((c[1] - 0.75).abs() < 1e-15);
        assert!((c[2] - 0.75 * 0.75).abs() < 1e-15);
        assert_eq!(meeting_tail_exact(&complete(3), 2, 2, 0).unwrap(), 0.0);
    }

    #[test]
    fn bipartite_walks_from_opposite_sides_never_meet() {
        let c = meeting_tail_curve(&cycle(4), 0, 1, 10).unwrap();
        assert!(c.iter().all(|&p| (p - 1.0).abs() < 1e-12));
    }

    #[test]
    fn lazy_edge_matches_closed_form() {
        // On lazy K_2 the pair meets in one step with probability 1/2.
        let g = complete(2).with_laziness(0.5).unwrap();
        let c = meeting_tail_curve(&g, 0, 1, 5).unwrap();
        for (t, p) in c.iter().enumerate() {
            assert!((p - 0.5f64.powi(t as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn tail_is_non_increasing() {
        let c = meeting_tail_curve(&triangle_with_pendant(), 3, 1, 30).unwrap();
        assert!(c.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    }
}
