//! Seedable random-walk engine.
//!
//! One transition consumes exactly one `u64` draw from the walker's stream.
//! Neighbor selection maps the draw onto `0..deg` with a widening multiply;
//! the resulting bias is below `deg / 2^64` and is ignored.

use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{stream_rng, CHUNK};

/// Ensembles smaller than this advance on the calling thread.
const PAR_MIN_WALKERS: usize = 4096;

#[inline]
pub(crate) fn next_node<R: RngCore + ?Sized>(g: &Graph, node: usize, rng: &mut R) -> usize {
    let nbrs = g.neighbors(node);
    let x = rng.next_u64();
    let beta = g.laziness();
    if beta == 0.0 {
        nbrs[((x as u128 * nbrs.len() as u128) >> 64) as usize] as usize
    } else {
        let unit = (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        if unit < beta {
            node
        } else {
            let k = ((unit - beta) / (1.0 - beta) * nbrs.len() as f64) as usize;
            nbrs[k.min(nbrs.len() - 1)] as usize
        }
    }
}

/// One step of the walk from `node`.
pub fn step<R: RngCore + ?Sized>(g: &Graph, node: usize, rng: &mut R) -> Result<usize> {
    g.check_node(node)?;
    if g.degree(node) == 0 {
        return Err(Error::IsolatedNode(node));
    }
    Ok(next_node(g, node, rng))
}

/// Outcome of a first-passage simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HitRecord {
    pub hit: bool,
    /// First-hit time when `hit`, otherwise the number of steps simulated
    /// (equal to `truncated_at`).
    pub steps: u64,
    pub truncated_at: u64,
}

/// Walks from `start` until `target` is reached or `cap` steps were taken.
pub fn walk_until_hit<R: RngCore + ?Sized>(
    g: &Graph,
    start: usize,
    target: usize,
    cap: u64,
    rng: &mut R,
) -> Result<HitRecord> {
    g.check_node(start)?;
    g.check_node(target)?;
    if start != target && g.degree(start) == 0 {
        return Err(Error::IsolatedNode(start));
    }
    Ok(walk_until_hit_unchecked(g, start, target, cap, rng))
}

pub(crate) fn walk_until_hit_unchecked<R: RngCore + ?Sized>(
    g: &Graph,
    start: usize,
    target: usize,
    cap: u64,
    rng: &mut R,
) -> HitRecord {
    let mut x = start;
    let mut t = 0u64;
    while x != target {
        if t == cap {
            return HitRecord {
                hit: false,
                steps: t,
                truncated_at: cap,
            };
        }
        x = next_node(g, x, rng);
        t += 1;
    }
    HitRecord {
        hit: true,
        steps: t,
        truncated_at: cap,
    }
}

#[derive(Debug, Clone)]
struct Walker {
    id: u32,
    node: u32,
    rng: ChaCha8Rng,
}

/// A set of independent walkers advanced in lock step.
///
/// Only live walkers are stored, ordered by id. Walker `i` draws from stream
/// `stream_base + i` of `seed`, so trajectories do not depend on thread
/// count or on which other walkers are alive.
#[derive(Debug, Clone)]
pub struct WalkEnsemble {
    walkers: Vec<Walker>,
    size: usize,
    t: usize,
    steps: u64,
}

impl WalkEnsemble {
    /// `count` walkers all starting at `start`.
    pub fn new(g: &Graph, start: usize, count: usize, seed: u64, stream_base: u64) -> Result<Self> {
        g.check_node(start)?;
        Self::from_starts(g, &vec![start; count], seed, stream_base)
    }

    pub fn from_starts(g: &Graph, starts: &[usize], seed: u64, stream_base: u64) -> Result<Self> {
        if starts.len() > u32::MAX as usize {
            return Err(Error::InvalidParameter("too many walkers".into()));
        }
        let mut walkers = Vec::with_capacity(starts.len());
        for (i, &s) in starts.iter().enumerate() {
            g.check_node(s)?;
            if g.degree(s) == 0 {
                return Err(Error::IsolatedNode(s));
            }
            walkers.push(Walker {
                id: i as u32,
                node: s as u32,
                rng: stream_rng(seed, stream_base + i as u64),
            });
        }
        Ok(Self {
            walkers,
            size: starts.len(),
            t: 0,
            steps: 0,
        })
    }

    /// Number of walkers the ensemble was created with.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn alive_count(&self) -> usize {
        self.walkers.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Total walker transitions performed so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_alive(&self, id: usize) -> bool {
        self.find(id).is_some()
    }

    pub fn position(&self, id: usize) -> Option<usize> {
        self.find(id).map(|k| self.walkers[k].node as usize)
    }

    fn find(&self, id: usize) -> Option<usize> {
        self.walkers.binary_search_by_key(&(id as u32), |w| w.id).ok()
    }

    /// `(id, node)` of live walkers in increasing id order.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.walkers.iter().map(|w| (w.id as usize, w.node as usize))
    }

    /// Per-walker positions; `None` for dead walkers.
    pub fn snapshot(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.size];
        for (id, node) in self.positions() {
            out[id] = Some(node);
        }
        out
    }

    /// Moves every live walker one step and increments `t`.
    pub fn advance(&mut self, g: &Graph) {
        let step_one = |w: &mut Walker| {
            w.node = next_node(g, w.node as usize, &mut w.rng) as u32;
        };
        if self.walkers.len() >= PAR_MIN_WALKERS {
            self.walkers.par_iter_mut().for_each(step_one);
        } else {
            self.walkers.iter_mut().for_each(step_one);
        }
        self.steps += self.walkers.len() as u64;
        self.t += 1;
    }

    /// Visits live walkers in increasing id order and removes those for
    /// which `remove(node)` returns true. Returns the number removed.
    pub fn remove_where<F: FnMut(usize) -> bool>(&mut self, mut remove: F) -> usize {
        let before = self.walkers.len();
        self.walkers.retain(|w| !remove(w.node as usize));
        before - self.walkers.len()
    }
}

/// Endpoint counts of `r` independent walks of `length` steps from `start`.
///
/// Walks are simulated in chunks of [`CHUNK`]; chunk `c` uses stream
/// `stream_base + c` of `seed`.
pub fn endpoint_counts(
    g: &Graph,
    start: usize,
    length: usize,
    r: u64,
    seed: u64,
    stream_base: u64,
) -> Result<Vec<u64>> {
    g.check_node(start)?;
    if length > 0 && g.degree(start) == 0 {
        return Err(Error::IsolatedNode(start));
    }
    let n = g.n();
    if length == 0 {
        let mut counts = vec![0; n];
        counts[start] = r;
        return Ok(counts);
    }
    let chunks = r.div_ceil(CHUNK as u64);
    let run_chunk = |c: u64| {
        let mut rng = stream_rng(seed, stream_base + c);
        let todo = (r - c * CHUNK as u64).min(CHUNK as u64);
        let mut ends = Vec::with_capacity(todo as usize);
        for _ in 0..todo {
            let mut x = start;
            for _ in 0..length {
                x = next_node(g, x, &mut rng);
            }
            ends.push(x as u32);
        }
        ends
    };
    let mut counts = vec![0u64; n];
    let per_chunk: Vec<Vec<u32>> = if chunks > 1 {
        (0..chunks).into_par_iter().map(run_chunk).collect()
    } else {
        (0..chunks).map(run_chunk).collect()
    };
    for ends in per_chunk {
        for e in ends {
            counts[e as usize] += 1;
        }
    }
    Ok(counts)
}

/// Empirical distribution of the endpoint of a `length`-step walk from
/// `start`, from `r` samples.
pub fn endpoint_distribution(
    g: &Graph,
    start: usize,
    length: usize,
    r: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    if r == 0 {
        return Err(Error::InvalidParameter("need at least one walk".into()));
    }
    let counts = endpoint_counts(g, start, length, r, seed, 0)?;
    Ok(counts.into_iter().map(|c| c as f64 / r as f64).collect())
}
