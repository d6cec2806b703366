//! Hitting times and effective resistance.

use nalgebra::{DMatrix, DVector};

use super::pull_mean;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph solved by dense LU; bigger graphs use Gauss-Seidel.
pub const DENSE_SOLVE_MAX: usize = 2000;
pub const GS_MAX_ITER: usize = 1_000_000;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Required agreement between the two resistance routes.
pub const RESISTANCE_AGREEMENT: f64 = 1e-8;

/// Expected hitting times to a fixed target from every node.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingVector {
    pub target: usize,
    pub h: Vec<f64>,
    /// `max_u |h[u] - 1 - (P h)[u]|` over non-target nodes.
    pub residual: f64,
}

/// Solves `h[u] = 1 + (P h)[u]` for `u != target`, `h[target] = 0`.
///
/// The residual is checked against `tol * max(1, max h)`, so `tol` is a
/// relative tolerance for graphs with large hitting times.
pub fn exact_hitting_to(g: &Graph, target: usize, tol: f64) -> Result<HittingVector> {
    let h = solve_absorbing(g, target, &vec![1.0; g.n()], tol, "hitting-time system")?;
    let residual = residual(g, target, &h, |_| 1.0);
    Ok(HittingVector { target, h, residual })
}

/// `H(u, v)`.
pub fn hitting_time(g: &Graph, u: usize, v: usize) -> Result<f64> {
    g.check_node(u)?;
    Ok(exact_hitting_to(g, v, DEFAULT_TOL)?.h[u])
}

/// `E[T^2]` for the first-hit time `T` of `target`, from every node.
pub fn hitting_second_moment(g: &Graph, target: usize, tol: f64) -> Result<Vec<f64>> {
    let h = exact_hitting_to(g, target, tol)?.h;
    let rhs: Vec<f64> = (0..g.n()).map(|x| 1.0 + 2.0 * pull_mean(g, &h, x)).collect();
    solve_absorbing(g, target, &rhs, tol, "second-moment system")
}

/// Variance of the first-hit time of `v` from `u`.
pub fn hitting_variance(g: &Graph, u: usize, v: usize) -> Result<f64> {
    g.check_node(u)?;
    let h = exact_hitting_to(g, v, DEFAULT_TOL)?.h[u];
    let s = hitting_second_moment(g, v, DEFAULT_TOL)?[u];
    Ok(s - h * h)
}

/// `H[(u, v)] = H(u, v)` for all pairs, one solve per target.
pub fn hitting_matrix(g: &Graph, tol: f64) -> Result<DMatrix<f64>> {
    let n = g.n();
    let mut out = DMatrix::zeros(n, n);
    for v in 0..n {
        let hv = exact_hitting_to(g, v, tol)?;
        for u in 0..n {
            out[(u, v)] = hv.h[u];
        }
    }
    Ok(out)
}

fn residual<F: Fn(usize) -> f64>(g: &Graph, target: usize, h: &[f64], rhs: F) -> f64 {
    (0..g.n())
        .filter(|&u| u != target)
        .map(|u| (h[u] - rhs(u) - pull_mean(g, h, u)).abs())
        .fold(0.0, f64::max)
}

fn solve_absorbing(
    g: &Graph,
    target: usize,
    rhs: &[f64],
    tol: f64,
    what: &'static str,
) -> Result<Vec<f64>> {
    g.check_node(target)?;
    g.require_connected()?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let h = if g.n() <= DENSE_SOLVE_MAX {
        solve_dense(g, target, rhs)?
    } else {
        solve_gauss_seidel(g, target, rhs, tol, what)?
    };
    let res = residual(g, target, &h, |u| rhs[u]);
    let scale = h.iter().fold(1.0, |a: f64, &b| a.max(b.abs()));
    if !(res <= tol * scale) {
        return Err(Error::NoConvergence {
            what,
            iterations: 0,
            residual: res,
        });
    }
    Ok(h)
}

fn solve_dense(g: &Graph, target: usize, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = g.n();
    let idx = |u: usize| if u < target { u } else { u - 1 };
    let k = n - 1;
    let stay = 1.0 - g.laziness();
    let mut a = DMatrix::<f64>::zeros(k, k);
    let mut b = DVector::<f64>::zeros(k);
    for u in (0..n).filter(|&u| u != target) {
        let i = idx(u);
        a[(i, i)] += stay;
        let nbrs = g.neighbors(u);
        let w = stay / nbrs.len() as f64;
        for &x in nbrs {
            let x = x as usize;
            if x != target {
                a[(i, idx(x))] -= w;
            }
        }
        b[i] = rhs[u];
    }
    let sol = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Mismatch("singular hitting-time system".into()))?;
    let mut h = vec![0.0; n];
    for u in (0..n).filter(|&u| u != target) {
        h[u] = sol[idx(u)];
    }
    Ok(h)
}

fn solve_gauss_seidel(
    g: &Graph,
    target: usize,
    rhs: &[f64],
    tol: f64,
    what: &'static str,
) -> Result<Vec<f64>> {
    let n = g.n();
    let stay = 1.0 - g.laziness();
    let mut h = vec![0.0; n];
    let mut res = f64::INFINITY;
    for it in 0..GS_MAX_ITER {
        for u in (0..n).filter(|&u| u != target) {
            let nbrs = g.neighbors(u);
            let avg = nbrs.iter().map(|&w| h[w as usize]).sum::<f64>() / nbrs.len() as f64;
            h[u] = rhs[u] / stay + avg;
        }
        if it % 16 == 15 {
            res = residual(g, target, &h, |u| rhs[u]);
            let scale = h.iter().fold(1.0, |a: f64, &b| a.max(b.abs()));
            if res <= tol * scale {
                return Ok(h);
            }
        }
    }
    Err(Error::NoConvergence {
        what,
        iterations: GS_MAX_ITER,
        residual: res,
    })
}

/// `(H(u, v) + H(v, u)) / 2m`.
pub fn effective_resistance_hitting(g: &Graph, u: usize, v: usize) -> Result<f64> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Ok(0.0);
    }
    let huv = exact_hitting_to(g, v, DEFAULT_TOL)?.h[u];
    let hvu = exact_hitting_to(g, u, DEFAULT_TOL)?.h[v];
    Ok((huv + hvu) / (2.0 * g.m() as f64))
}

fn shifted_laplacian(g: &Graph) -> Result<DMatrix<f64>> {
    let n = g.n();
    g.require_connected()?;
    if n > DENSE_SOLVE_MAX {
        return Err(Error::TooLarge {
            what: "Laplacian pseudo-inverse",
            n,
            cap: DENSE_SOLVE_MAX,
        });
    }
    let stay = 1.0 - g.laziness();
    let mut l = DMatrix::from_element(n, n, 1.0 / n as f64);
    for u in 0..n {
        l[(u, u)] += stay * g.degree(u) as f64;
        for &w in g.neighbors(u) {
            l[(u, w as usize)] -= stay;
        }
    }
    Ok(l)
}

/// Moore-Penrose pseudo-inverse of `L = (1 - beta)(D - A)`, through
/// `L^+ = (L + J/n)^{-1} - J/n`.
pub fn laplacian_pseudoinverse(g: &Graph) -> Result<DMatrix<f64>> {
    let n = g.n();
    let inv = shifted_laplacian(g)?
        .try_inverse()
        .ok_or_else(|| Error::Mismatch("singular shifted Laplacian".into()))?;
    Ok(inv.add_scalar(-1.0 / n as f64))
}

/// `chi^T L^+ chi` with `chi = e_u - e_v`.
pub fn effective_resistance_pinv(g: &Graph, u: usize, v: usize) -> Result<f64> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Ok(0.0);
    }
    let n = g.n();
    let mut chi = DVector::zeros(n);
    chi[u] = 1.0;
    chi[v] = -1.0;
    let x = shifted_laplacian(g)?
        .lu()
        .solve(&chi)
        .ok_or_else(|| Error::Mismatch("singular shifted Laplacian".into()))?;
    Ok(x[u] - x[v])
}

/// Effective resistance from hitting times, cross-checked against the
/// pseudo-inverse route when the graph is small enough for a dense solve.
/// For a lazy chain both routes give `R / (1 - beta)`.
pub fn exact_effective_resistance(g: &Graph, u: usize, v: usize) -> Result<f64> {
    let r = effective_resistance_hitting(g, u, v)?;
    if g.n() <= DENSE_SOLVE_MAX {
        let p = effective_resistance_pinv(g, u, v)?;
        if (r - p).abs() > RESISTANCE_AGREEMENT * r.abs().max(1.0) {
            return Err(Error::Mismatch(format!(
                "resistance routes disagree: hitting {r}, pseudo-inverse {p}"
            )));
        }
    }
    Ok(r)
}
