//! Benchmark graphs used by the experiment harness.

use std::path::Path;

use crate::error::Result;
use crate::generate::{generate_ba, generate_er, generate_planted_partition, generate_sbm};
use crate::graph::{Graph, Ingested};

/// Node and edge count of the college-football schedule network.
pub const FOOTBALL_N: usize = 115;
pub const FOOTBALL_M: usize = 613;

/// Environment variable pointing at a real football edge list.
pub const FOOTBALL_ENV: &str = "HITLOCAL_FOOTBALL_EDGES";

const FOOTBALL_CONFERENCES: [usize; 12] = [12, 10, 9, 12, 11, 9, 10, 8, 10, 12, 7, 5];
const FOOTBALL_INTRA: usize = 400;
const FOOTBALL_SEED: u64 = 0x0f00_7ba1;

/// A stand-in with the football network's size and community layout: 115
/// teams in 12 conferences, 400 conference games and 213 others, 613 edges
/// in total. The construction is fixed, so the graph is the same on every
/// call. The first seed giving a connected non-bipartite graph is used.
pub fn football_like() -> Graph {
    (0..)
        .map(|k| {
            generate_planted_partition(
                &FOOTBALL_CONFERENCES,
                FOOTBALL_INTRA,
                FOOTBALL_M - FOOTBALL_INTRA,
                FOOTBALL_SEED + k,
            )
            .expect("fixed parameters are valid")
        })
        .find(|g| g.is_ergodic())
        .expect("some seed yields a connected graph")
}

/// The football graph from `HITLOCAL_FOOTBALL_EDGES` when that variable
/// names a readable edge list, otherwise [`football_like`]. The flag tells
/// which one was returned.
pub fn football() -> Result<(Graph, bool)> {
    match std::env::var_os(FOOTBALL_ENV) {
        Some(path) => Ok((load_edge_list(Path::new(&path), true)?.graph, true)),
        None => Ok((football_like(), false)),
    }
}

pub fn load_edge_list(path: &Path, largest_component: bool) -> Result<Ingested> {
    let file = std::fs::File::open(path)?;
    Graph::read_edge_list(std::io::BufReader::new(file), largest_component)
}

/// Synthetic networks from the benchmark protocol, on 1000 nodes.
pub fn table3_er(seed: u64) -> Result<Graph> {
    generate_er(1000, 0.01, seed)
}

pub fn table3_ba(seed: u64) -> Result<Graph> {
    generate_ba(1000, 10, seed)
}

/// Five communities of 200 nodes, `p_intra = 0.05`, `p_inter = 0.01`
/// (expected 8975 edges).
pub fn table3_sbm(seed: u64) -> Result<Graph> {
    generate_sbm(&[200; 5], 0.05, 0.01, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn football_like_shape() {
        let g = football_like();
        assert_eq!((g.n(), g.m()), (FOOTBALL_N, FOOTBALL_M));
        assert!(g.is_ergodic());
        assert_eq!(g, football_like());
    }
}
