use std::fmt::Write as _;

use crate::error::{input, Error, Result};
use crate::graph::{enumerate_triangles, Graph, GraphError, Node};

/// A map `source -> target` meant to be a covering map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMap {
    pub source: Graph,
    pub target: Graph,
    pub map: Vec<Node>,
}

/// Node `x` of `g` has clones `x` and `x + n` in the cover; edge `{x, y}`
/// becomes `{x, y + n}` and `{y, x + n}`.
pub fn bipartite_double_cover(g: &Graph) -> CoveringMap {
    let n = g.n();
    let edges = g.edges().flat_map(|(x, y)| [(x, y + n), (y, x + n)]);
    let source = Graph::from_edges(2 * n, edges).expect("double cover is simple");
    let map = (0..2 * n).map(|v| v % n).collect();
    CoveringMap { source, target: g.clone(), map }
}

/// Four copies of `g` (copy `j` of node `x` is `j * n + x`) in which the
/// edges `{b,c}`, `{a,c}`, `{a,b}` of the chosen triangle are twisted
/// between copy 0 and copies 1, 2, 3 respectively.
pub fn twisted_triangle_lift(g: &Graph, triangle: [Node; 3]) -> Result<CoveringMap> {
    let n = g.n();
    let [a, b, c] = triangle;
    if a >= n || b >= n || c >= n || !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
        return input(format!("{triangle:?} is not a triangle of the graph"));
    }
    let key = |x: Node, y: Node| (x.min(y), x.max(y));
    let twisted = [key(b, c), key(a, c), key(a, b)];
    let mut edges = Vec::with_capacity(4 * g.m());
    for (x, y) in g.edges() {
        match twisted.iter().position(|&e| e == (x, y)) {
            Some(k) => {
                let i = k + 1;
                edges.push((x, i * n + y));
                edges.push((i * n + x, y));
                for j in (1..4).filter(|&j| j != i) {
                    edges.push((j * n + x, j * n + y));
                }
            }
            None => edges.extend((0..4).map(|j| (j * n + x, j * n + y))),
        }
    }
    let source = Graph::from_edges(4 * n, edges)?;
    let map = (0..4 * n).map(|v| v % n).collect();
    Ok(CoveringMap { source, target: g.clone(), map })
}

/// Homomorphism plus bijectivity on every closed neighborhood.
pub fn verify_covering_map(cm: &CoveringMap) -> Result<bool> {
    let (s, t) = (&cm.source, &cm.target);
    if cm.map.len() != s.n() {
        return input(format!("map has {} entries for {} source nodes", cm.map.len(), s.n()));
    }
    if let Some(&bad) = cm.map.iter().find(|&&m| m >= t.n()) {
        return Err(GraphError::NodeOutOfRange { node: bad, n: t.n() }.into());
    }
    let mut hit = vec![usize::MAX; t.n()];
    for x in 0..s.n() {
        let fx = cm.map[x];
        if s.degree(x) != t.degree(fx) {
            return Ok(false);
        }
        for &y in s.neighbors(x) {
            let fy = cm.map[y];
            // adjacency also rules out fy == fx
            if !t.has_edge(fx, fy) || hit[fy] == x {
                return Ok(false);
            }
            hit[fy] = x;
        }
    }
    Ok(true)
}

impl CoveringMap {
    /// Target graph block, source graph block, then `map: m0 m1 ...`.
    pub fn to_text(&self) -> String {
        let mut s = self.target.to_text();
        s.push_str(&self.source.to_text());
        s.push_str("map:");
        for m in &self.map {
            write!(s, " {m}").unwrap();
        }
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<CoveringMap> {
        use crate::graph::io_support::{content_lines, parse_graph_block};
        let mut lines = content_lines(text);
        let target = parse_graph_block(&mut lines)?;
        let source = parse_graph_block(&mut lines)?;
        let (line, l) = lines.next().ok_or_else(|| Error::Input("missing map line".into()))?;
        let rest = l
            .strip_prefix("map:")
            .ok_or_else(|| Error::Input(format!("line {line}: expected `map:`")))?;
        let map = rest
            .split_whitespace()
            .map(|t| t.parse::<Node>().map_err(|_| Error::Input(format!("line {line}: bad map entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some((line, _)) = lines.next() {
            return input(format!("line {line}: trailing content"));
        }
        let cm = CoveringMap { source, target, map };
        if cm.map.len() != cm.source.n() {
            return input(format!("map has {} entries for {} source nodes", cm.map.len(), cm.source.n()));
        }
        Ok(cm)
    }

    pub fn identity(g: &Graph) -> CoveringMap {
        CoveringMap { source: g.clone(), target: g.clone(), map: (0..g.n()).collect() }
    }

    pub fn is_triangle_free_source(&self) -> bool {
        enumerate_triangles(&self.source).is_empty()
    }
}
