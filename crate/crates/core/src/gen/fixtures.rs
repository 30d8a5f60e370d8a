//! Small hand-built graphs with known properties.

use super::cover::{twisted_triangle_lift, CoveringMap};
use crate::graph::Graph;

/// Two non-isomorphic 6-node graphs `G`, `H` and a common 12-node cover `F`.
#[derive(Debug, Clone)]
pub struct Fig1 {
    pub g: Graph,
    pub h: Graph,
    pub f_to_g: CoveringMap,
    pub f_to_h: CoveringMap,
}

/// Nodes `a..f` are `0..5`; in `F`, `aa..ff` are `6..11`.
pub fn fig1() -> Fig1 {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]).unwrap();
    let h = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
    let ring = |o: usize| (0..6).map(move |i| (o + i, o + (i + 1) % 6));
    let f = Graph::from_edges(12, ring(0).chain(ring(6)).chain([(1, 7), (4, 10)])).unwrap();
    let f_to_g = CoveringMap { source: f.clone(), target: g.clone(), map: vec![0, 1, 2, 3, 4, 5, 5, 4, 3, 2, 1, 0] };
    let f_to_h = CoveringMap { source: f, target: h.clone(), map: vec![1, 0, 2, 1, 0, 2, 5, 3, 4, 5, 3, 4] };
    Fig1 { g, h, f_to_g, f_to_h }
}

/// A 6-node graph containing triangle `(3,4,5)`, with 2-dominating independent set
/// `{0,1}` in which every node's two smallest-identifier neighbors are
/// non-adjacent. Identifiers are `1..=6` in node order.
pub fn naive_counterexample_fixture() -> (Graph, Vec<u32>) {
    let edges = [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (3, 4), (4, 5), (3, 5)];
    (Graph::from_edges(6, edges).unwrap(), (1..=6).collect())
}

/// For `n >= 6`: `G` is a path on `n - 2` nodes with two extra leaves on
/// its first node; `H` is a path on `n - 4` nodes with two extra leaves on
/// each end. Both have `n` nodes.
pub fn appc_paths(n: usize) -> (Graph, Graph) {
    assert!(n >= 6, "needs n >= 6");
    let mut g: Vec<(usize, usize)> = (1..n - 2).map(|i| (i - 1, i)).collect();
    g.extend([(0, n - 2), (0, n - 1)]);
    let k = n - 4;
    let mut h: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    h.extend([(0, k), (0, k + 1), (k - 1, k + 2), (k - 1, k + 3)]);
    (Graph::from_edges(n, g).unwrap(), Graph::from_edges(n, h).unwrap())
}

/// Twisted lift of `K4` along triangle `(0,1,2)`.
pub fn k4_lift() -> CoveringMap {
    twisted_triangle_lift(&Graph::complete(4), [0, 1, 2]).unwrap()
}

/// A connected 6-node graph of diameter 3 whose round-1 refinement colors
/// are pairwise distinct under set semantics.
pub fn diameter3_fixture() -> Graph {
    Graph::from_edges(6, DIAM3_EDGES).unwrap()
}

const DIAM3_EDGES: [(usize, usize); 7] = [(0, 1), (0, 2), (0, 3), (0, 5), (1, 2), (1, 4), (2, 3)];
