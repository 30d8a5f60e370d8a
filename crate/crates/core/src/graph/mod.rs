//! Undirected simple graphs on the node set `0..n`, plus the structural
//! metrics and brute-force oracles the rest of the crate treats as ground
//! truth.
//!
//! Adjacency is held twice: sorted neighbor lists for iteration, and (for
//! `n <= BITSET_LIMIT`) one bitset row per node for O(1) adjacency queries
//! and word-parallel neighborhood intersection.

mod enumerate;
mod io;
pub(crate) mod io_support {
    pub(crate) use super::io::{content_lines, parse_graph_block};
}
mod metrics;
mod oracles;

use std::fmt;

use thiserror::Error;

pub use enumerate::{enumerate_connected_graphs, ConnectedGraphs, MAX_ENUMERATION_N};
pub use metrics::{bfs_distances, bfs_layers, components, eccentricities_and_diameter, GraphMetrics};
pub use oracles::{
    are_isomorphic_small, enumerate_triangles, has_triangle, is_hamiltonian, MAX_HAMILTONIAN_N,
    MAX_ISOMORPHISM_N,
};

/// Largest node count for which bitset rows are materialized.
pub const BITSET_LIMIT: usize = 4096;

pub type Node = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("{what} supports at most {limit} nodes, got {n}")]
    Capacity { what: &'static str, limit: usize, n: usize },
    #[error("graphs differ in size: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("malformed graph file at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An immutable undirected simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Node>>,
    m: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph::from_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::NodeOutOfRange { node: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// `adj` must already be symmetric, sorted, loop- and duplicate-free.
    pub(crate) fn from_adjacency(adj: Vec<Vec<Node>>) -> Graph {
        let n = adj.len();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let (words, bits) = if n <= BITSET_LIMIT {
            let words = n.div_ceil(64);
            let mut bits = vec![0u64; words * n];
            for (u, list) in adj.iter().enumerate() {
                for &v in list {
                    bits[u * words + v / 64] |= 1u64 << (v % 64);
                }
            }
            (words, bits)
        } else {
            (0, Vec::new())
        };
        Graph { adj, m, words, bits }
    }

    pub fn complete(n: usize) -> Graph {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Graph::from_adjacency(adj)
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 nodes");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// `K_{1,leaves}` with the center at node 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Node) -> &[Node] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Node) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        if self.words > 0 {
            self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
        } else {
            self.adj[u].binary_search(&v).is_ok()
        }
    }

    /// Bitset row of `v`, present when `n <= BITSET_LIMIT`.
    #[inline]
    pub fn row(&self, v: Node) -> Option<&[u64]> {
        (self.words > 0).then(|| &self.bits[v * self.words..(v + 1) * self.words])
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn common_neighbor_count(&self, u: Node, v: Node) -> usize {
        match (self.row(u), self.row(v)) {
            (Some(a), Some(b)) => a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum(),
            _ => sorted_intersection_len(&self.adj[u], &self.adj[v]),
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The graph with node `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Node]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut adj = vec![Vec::new(); self.n()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
            adj[perm[u]].sort_unstable();
        }
        Graph::from_adjacency(adj)
    }

    /// Disjoint union; nodes of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + off).collect()));
        Graph::from_adjacency(adj)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || bfs_distances(self, 0).iter().all(Option::is_some)
    }
}

fn sorted_intersection_len(a: &[Node], b: &[Node]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}
