//! Sampling `(u, v)` query pairs.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::pagerank;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::stream_rng;

pub const PAGERANK_DAMPING: f64 = 0.85;
const PAGERANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStrategy {
    Uniform,
    DegreeProp,
    DegreeInvprop,
    PagerankProp,
    PagerankInvprop,
}

impl PairStrategy {
    pub const ALL: [PairStrategy; 5] = [
        PairStrategy::DegreeProp,
        PairStrategy::DegreeInvprop,
        PairStrategy::PagerankProp,
        PairStrategy::PagerankInvprop,
        PairStrategy::Uniform,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PairStrategy::Uniform => "uniform",
            PairStrategy::DegreeProp => "degree-prop",
            PairStrategy::DegreeInvprop => "degree-invprop",
            PairStrategy::PagerankProp => "pagerank-prop",
            PairStrategy::PagerankInvprop => "pagerank-invprop",
        }
    }
}

impl fmt::Display for PairStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PairStrategy::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown pair strategy {s:?}")))
    }
}

/// Draws pairs with probability proportional to `w(u) * w(v)` (or its
/// inverse), conditioned on `u != v`.
#[derive(Debug, Clone)]
pub struct PairSampler {
    pub strategy: PairStrategy,
    pub seed: u64,
}

impl PairSampler {
    pub fn new(strategy: PairStrategy, seed: u64) -> Self {
        Self { strategy, seed }
    }

    /// Per-node weights used by the strategy. Strictly positive.
    pub fn weights(&self, g: &Graph) -> Result<Vec<f64>> {
        let n = g.n();
        let w: Vec<f64> = match self.strategy {
            PairStrategy::Uniform => vec![1.0; n],
            PairStrategy::DegreeProp => (0..n).map(|u| g.degree(u) as f64).collect(),
            PairStrategy::DegreeInvprop => (0..n).map(|u| 1.0 / g.degree(u) as f64).collect(),
            PairStrategy::PagerankProp => pagerank(g, PAGERANK_DAMPING, PAGERANK_TOL)?,
            PairStrategy::PagerankInvprop => pagerank(g, PAGERANK_DAMPING, PAGERANK_TOL)?
                .into_iter()
                .map(|p| 1.0 / p)
                .collect(),
        };
        if let Some(bad) = w.iter().position(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "node {bad} has non-positive sampling weight (isolated node?)"
            )));
        }
        Ok(w)
    }

    pub fn sample(&self, g: &Graph, count: usize) -> Result<Vec<(usize, usize)>> {
        if count == 0 {
            return Err(Error::InvalidParameter("pair count must be positive".into()));
        }
        if g.n() < 2 {
            return Err(Error::InvalidParameter("need at least two nodes".into()));
        }
        let w = self.weights(g)?;
        let dist = WeightedIndex::new(&w)
            .map_err(|e| Error::InvalidParameter(format!("bad weights: {e}")))?;
        let mut rng = stream_rng(self.seed, 0);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let u = dist.sample(&mut rng);
            let v = dist.sample(&mut rng);
            if u != v {
                out.push((u, v));
            }
        }
        Ok(out)
    }
}

/// Uniformly random ordered pair of distinct nodes.
pub fn uniform_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let u = rng.random_range(0..n);
    let mut v = rng.random_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}
