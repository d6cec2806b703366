//! Random and structured graph generators.
//!
//! All random generators are deterministic functions of their seed.

use std::ops::Range;

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::stream_rng;

fn check_prob(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in (0, 1], got {p}")))
    }
}

/// Calls `emit(k)` for each `k` in `0..total` independently with
/// probability `p`, skipping ahead geometrically between successes.
fn bernoulli_indices<F: FnMut(u64)>(total: u64, p: f64, rng: &mut ChaCha8Rng, mut emit: F) {
    if p >= 1.0 {
        (0..total).for_each(emit);
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut k: u64 = 0;
    loop {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        if !skip.is_finite() || skip >= (total - k) as f64 {
            return;
        }
        k += skip as u64;
        emit(k);
        k += 1;
        if k >= total {
            return;
        }
    }
}

/// Decodes a linear index over `{(a, b) : 0 <= b < a}` into `(a, b)`.
fn triangular_pair(k: u64) -> (u64, u64) {
    let mut a = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).floor() as u64;
    while a * (a - 1) / 2 > k {
        a -= 1;
    }
    while (a + 1) * a / 2 <= k {
        a += 1;
    }
    (a, k - a * (a - 1) / 2)
}

/// Erdős–Rényi `G(n, p)`.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    check_prob("p", p)?;
    generate_sbm(&[n], p, p, seed)
}

/// Stochastic block model: pairs inside a block are joined with probability
/// `p_intra`, pairs across blocks with `p_inter`. Blocks occupy consecutive
/// id ranges in the order given.
pub fn generate_sbm(block_sizes: &[usize], p_intra: f64, p_inter: f64, seed: u64) -> Result<Graph> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(Error::InvalidParameter("block sizes must be positive".into()));
    }
    check_prob("p_intra", p_intra)?;
    check_prob("p_inter", p_inter)?;
    let mut starts = Vec::with_capacity(block_sizes.len());
    let mut n = 0usize;
    for &s in block_sizes {
        starts.push(n);
        n += s;
    }
    let mut rng = stream_rng(seed, 0);
    let mut edges = Vec::new();
    for (i, (&si, &oi)) in block_sizes.iter().zip(&starts).enumerate() {
        let total = (si as u64) * (si as u64 - 1) / 2;
        bernoulli_indices(total, p_intra, &mut rng, |k| {
            let (a, b) = triangular_pair(k);
            edges.push((oi + a as usize, oi + b as usize));
        });
        for (&sj, &oj) in block_sizes.iter().zip(&starts).skip(i + 1) {
            let total = si as u64 * sj as u64;
            bernoulli_indices(total, p_inter, &mut rng, |k| {
                edges.push((oi + (k / sj as u64) as usize, oj + (k % sj as u64) as usize));
            });
        }
    }
    Graph::from_edges(n, edges)
}

/// Barabási–Albert preferential attachment. Nodes `0..k` form the seed; each
/// later node attaches to `k` distinct earlier nodes, the first arrival to
/// all seed nodes and the rest with probability proportional to degree.
/// The result has exactly `k * (n - k)` edges.
pub fn generate_ba(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if k == 0 || n <= k {
        return Err(Error::InvalidParameter(format!("need n > k >= 1, got n={n}, k={k}")));
    }
    let mut rng = stream_rng(seed, 0);
    let mut edges = Vec::with_capacity(k * (n - k));
    let mut repeated: Vec<usize> = Vec::with_capacity(2 * k * (n - k));
    let mut targets: Vec<usize> = (0..k).collect();
    let mut chosen = vec![false; n];
    for source in k..n {
        for &t in &targets {
            edges.push((source, t));
        }
        repeated.extend_from_slice(&targets);
        repeated.extend(std::iter::repeat_n(source, k));
        for &t in &targets {
            chosen[t] = false;
        }
        targets.clear();
        while targets.len() < k {
            let x = repeated[rng.random_range(0..repeated.len())];
            if !chosen[x] {
                chosen[x] = true;
                targets.push(x);
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Node roles in [`generate_barbell`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarbellLandmarks {
    /// Path node adjacent to the clique.
    pub u1: usize,
    /// Star center, the far end of the path.
    pub un: usize,
    pub clique: Range<usize>,
    pub path: Range<usize>,
    pub leaves: Range<usize>,
}

/// Clique `K_n` on `y_1..y_n`, a path `y_1 - u_1 - ... - u_n`, and `n^2`
/// leaves attached to `u_n`. Node ids: clique `0..n` (with `y_1 = 0`),
/// path `n..2n` (`u_i = n + i - 1`), leaves `2n..2n + n^2`.
pub fn generate_barbell(n: usize) -> Result<(Graph, BarbellLandmarks)> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("barbell needs n >= 3, got {n}")));
    }
    let total = 2 * n + n * n;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    edges.push((0, n));
    for i in n..2 * n - 1 {
        edges.push((i, i + 1));
    }
    let un = 2 * n - 1;
    for leaf in 2 * n..total {
        edges.push((un, leaf));
    }
    let g = Graph::from_edges(total, edges)?;
    Ok((
        g,
        BarbellLandmarks {
            u1: n,
            un,
            clique: 0..n,
            path: n..2 * n,
            leaves: 2 * n..total,
        },
    ))
}

/// Kronecker (tensor) product: `(a, b) ~ (c, d)` iff `a ~ c` in `g` and
/// `b ~ d` in `h`. Node `(a, b)` gets id `a * h.n() + b`.
pub fn kronecker_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.n() == 0 || h.n() == 0 {
        return Err(Error::InvalidParameter("factors must be nonempty".into()));
    }
    let nodes = g.n() as u128 * h.n() as u128;
    let max = u32::MAX as u128;
    if nodes > max {
        return Err(Error::SizeOverflow { nodes, max });
    }
    let hn = h.n();
    let mut edges = Vec::with_capacity(2 * g.m() * h.m());
    for (a, c) in g.edges() {
        for (b, d) in h.edges() {
            edges.push((a * hn + b, c * hn + d));
            edges.push((a * hn + d, c * hn + b));
        }
    }
    Graph::from_edges(nodes as usize, edges)
}

/// Graph with exactly `intra` edges inside blocks and `inter` edges across,
/// each set drawn uniformly without replacement.
pub fn generate_planted_partition(
    block_sizes: &[usize],
    intra: usize,
    inter: usize,
    seed: u64,
) -> Result<Graph> {
    let n: usize = block_sizes.iter().sum();
    let mut block = Vec::with_capacity(n);
    for (b, &s) in block_sizes.iter().enumerate() {
        block.extend(std::iter::repeat_n(b, s));
    }
    let mut intra_pairs = Vec::new();
    let mut inter_pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if block[a] == block[b] {
                intra_pairs.push((a, b));
            } else {
                inter_pairs.push((a, b));
            }
        }
    }
    if intra > intra_pairs.len() || inter > inter_pairs.len() {
        return Err(Error::InvalidParameter("requested more edges than pairs".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let mut edges: Vec<(usize, usize)> = index::sample(&mut rng, intra_pairs.len(), intra)
        .into_iter()
        .map(|k| intra_pairs[k])
        .collect();
    edges.extend(
        index::sample(&mut rng, inter_pairs.len(), inter)
            .into_iter()
            .map(|k| inter_pairs[k]),
    );
    Graph::from_edges(n, edges)
}
