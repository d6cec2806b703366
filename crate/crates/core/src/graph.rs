//! Immutable undirected simple graphs in compressed sparse row form.
//!
//! A [`Graph`] stores, for every node, a sorted slice of neighbor ids. Each
//! undirected edge appears twice in the neighbor array, so
//! `neighbors.len() == 2 * m` and `offsets[n] == 2 * m`.
//!
//! The graph also carries the laziness `β` of the random walk defined on it:
//! at every step the walker stays put with probability `β` and otherwise
//! moves to a uniform neighbor. `β = 0` (the default) is the simple random
//! walk. All estimators assume the walk is aperiodic, which for a connected
//! graph means it is not bipartite or `β > 0`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Header line written by [`Graph::write_edge_list`]. When present, node ids
/// are taken verbatim and isolated nodes survive a round trip.
const HEADER_TAG: &str = "# hitlocal-graph";

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    m: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    laziness: f64,
}

/// A graph read from an edge-list file together with the original node ids.
///
/// `ids[k]` is the id that dense node `k` carried in the input.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub graph: Graph,
    pub ids: Vec<u64>,
}

impl Ingested {
    /// Dense id of an original node id.
    pub fn dense_id(&self, original: u64) -> Option<usize> {
        self.ids.binary_search(&original).ok()
    }
}

impl Graph {
    /// Builds a simple graph on `n` nodes. Self-loops are dropped and
    /// duplicate or reversed edges collapse into one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::SizeOverflow {
                nodes: n as u128,
                max: u32::MAX as u128,
            });
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, n });
                }
            }
            if a != b {
                pairs.push((a.min(b) as u32, a.max(b) as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_unique(n, &pairs))
    }

    fn from_sorted_unique(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(a, b) in pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; 2 * pairs.len()];
        for &(a, b) in pairs {
            neighbors[fill[a as usize]] = b;
            fill[a as usize] += 1;
            neighbors[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for u in 0..n {
            neighbors[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        Self {
            n,
            m: pairs.len(),
            offsets,
            neighbors,
            laziness: 0.0,
        }
    }

    /// Returns the same graph with walk laziness `beta` in `[0, 1)`.
    pub fn with_laziness(mut self, beta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!(
                "laziness must lie in [0, 1), got {beta}"
            )));
        }
        self.laziness = beta;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn laziness(&self) -> f64 {
        self.laziness
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Undirected edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&w| w as usize)
                .filter(move |&w| w > u)
                .map(move |w| (u, w))
        })
    }

    pub fn check_node(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: u, n: self.n })
        }
    }

    /// Connected-component label of every node, labels numbered from 0 in
    /// order of their smallest node.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &w in self.neighbors(x) {
                    let w = w as usize;
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_labels().1 == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.m == 0 && self.n != 1 {
            return Err(Error::EmptyGraph);
        }
        let (_, components) = self.component_labels();
        if components == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected { components })
        }
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &w in self.neighbors(x) {
                    let w = w as usize;
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[x];
                        queue.push_back(w);
                    } else if side[w] == side[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True when the walk is connected and aperiodic.
    pub fn is_ergodic(&self) -> bool {
        self.is_connected() && (self.laziness > 0.0 || !self.is_bipartite())
    }

    /// Breadth-first distances from `s`; unreachable nodes get `usize::MAX`.
    pub fn bfs_distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &w in self.neighbors(x) {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Exact diameter for small graphs, `2 * eccentricity(0)` otherwise.
    pub fn diameter_bound(&self) -> usize {
        let ecc = |s: usize| {
            self.bfs_distances(s)
                .into_iter()
                .filter(|&d| d != usize::MAX)
                .max()
                .unwrap_or(0)
        };
        if self.n <= 2000 {
            (0..self.n).map(ecc).max().unwrap_or(0)
        } else {
            2 * ecc(0)
        }
    }

    /// Induced subgraph on the largest connected component. Returns the
    /// subgraph and, for each of its nodes, the node it came from.
    pub fn largest_component(&self) -> (Graph, Vec<usize>) {
        let (label, count) = self.component_labels();
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l] += 1;
        }
        let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)));
        let Some(best) = best else {
            return (self.clone(), (0..self.n).collect());
        };
        let kept: Vec<usize> = (0..self.n).filter(|&u| label[u] == best).collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (k, &u) in kept.iter().enumerate() {
            new_id[u] = k;
        }
        let pairs: Vec<(u32, u32)> = self
            .edges()
            .filter(|&(a, _)| label[a] == best)
            .map(|(a, b)| (new_id[a] as u32, new_id[b] as u32))
            .collect();
        let mut sub = Self::from_sorted_unique(kept.len(), &sorted(pairs));
        sub.laziness = self.laziness;
        (sub, kept)
    }

    /// Parses a whitespace-separated edge list.
    ///
    /// Lines starting with `#` are comments. Without the header written by
    /// [`Graph::write_edge_list`], ids are densely remapped in increasing
    /// order of the original id. With `largest_component` set, only the
    /// largest connected component is kept.
    pub fn from_edge_list(text: &str, largest_component: bool) -> Result<Ingested> {
        Self::read_edge_list(text.as_bytes(), largest_component)
    }

    pub fn read_edge_list<R: BufRead>(reader: R, largest_component: bool) -> Result<Ingested> {
        let mut raw = Vec::new();
        let mut header: Option<(usize, usize)> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix(HEADER_TAG) {
                header = Some(parse_header(rest, lineno)?);
                continue;
            }
            if trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let mut next_id = |what: &str| -> Result<u64> {
                let tok = fields.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("missing {what} node id"),
                })?;
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("invalid node id {tok:?}"),
                })
            };
            let a = next_id("first")?;
            let b = next_id("second")?;
            raw.push((a, b));
        }

        let (graph, ids) = match header {
            Some((n, m)) => {
                let edges = raw.iter().map(|&(a, b)| (a as usize, b as usize));
                let g = Graph::from_edges(n, edges)?;
                if g.m != m {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("header declares {m} edges but {} were read", g.m),
                    });
                }
                (g, (0..n as u64).collect::<Vec<_>>())
            }
            None => {
                if raw.is_empty() {
                    return Err(Error::EmptyGraph);
                }
                let mut ids: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
                ids.sort_unstable();
                ids.dedup();
                let index: BTreeMap<u64, usize> =
                    ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
                let edges = raw.iter().map(|(a, b)| (index[a], index[b]));
                (Graph::from_edges(ids.len(), edges)?, ids)
            }
        };
        if graph.m == 0 {
            return Err(Error::EmptyGraph);
        }
        if largest_component {
            let (sub, kept) = graph.largest_component();
            let ids = kept.into_iter().map(|k| ids[k]).collect();
            Ok(Ingested { graph: sub, ids })
        } else {
            Ok(Ingested { graph, ids })
        }
    }

    /// Writes the graph as an edge list with a `(n, m)` header. Reading the
    /// output back with [`Graph::from_edge_list`] yields an identical graph
    /// (laziness excepted, which is a walk parameter and not stored).
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut buf = String::with_capacity(16 * self.m + 64);
        writeln!(buf, "{HEADER_TAG} n={} m={}", self.n, self.m).unwrap();
        for (a, b) in self.edges() {
            writeln!(buf, "{a} {b}").unwrap();
        }
        out.write_all(buf.as_bytes())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut out = Vec::new();
        self.write_edge_list(&mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("edge list is ASCII")
    }
}

fn sorted(mut pairs: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    pairs.sort_unstable();
    pairs
}

fn parse_header(rest: &str, line: usize) -> Result<(usize, usize)> {
    let mut n = None;
    let mut m = None;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| Error::Parse {
            line,
            msg: format!("malformed header field {field:?}"),
        })?;
        let value: usize = value.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("malformed header value {value:?}"),
        })?;
        match key {
            "n" => n = Some(value),
            "m" => m = Some(value),
            _ => {}
        }
    }
    match (n, m) {
        (Some(n), Some(m)) => Ok((n, m)),
        _ => Err(Error::Parse {
            line,
            msg: "header must declare n= and m=".into(),
        }),
    }
}

/// Small named graphs for tests and examples.
pub mod fixtures {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    /// Triangle 0-1-2 with a pendant node 3 attached to 0.
    pub fn triangle_with_pendant() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap()
    }
}
