use std::collections::VecDeque;

use serde::Serialize;

use super::{Graph, GraphError, Node};

/// Eccentricities and diameter of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    /// `None` for every node when the graph is disconnected.
    pub eccentricity: Vec<Option<usize>>,
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
}

/// Hop distances from `root`; unreachable nodes are `None`.
pub fn bfs_distances(g: &Graph, root: Node) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[root] = Some(0);
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap() + 1;
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(d);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// BFS layers `S_0 = {root}, S_1, ...`, each sorted.
pub fn bfs_layers(g: &Graph, root: Node) -> Result<Vec<Vec<Node>>, GraphError> {
    if root >= g.n() {
        return Err(GraphError::NodeOutOfRange { node: root, n: g.n() });
    }
    let mut layers: Vec<Vec<Node>> = Vec::new();
    for (v, d) in bfs_distances(g, root).into_iter().enumerate() {
        if let Some(d) = d {
            if layers.len() <= d {
                layers.resize(d + 1, Vec::new());
            }
            layers[d].push(v);
        }
    }
    Ok(layers)
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<Node>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &v in g.neighbors(comp[i]) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn eccentricities_and_diameter(g: &Graph) -> GraphMetrics {
    let n = g.n();
    let mut ecc = Vec::with_capacity(n);
    for v in 0..n {
        let dist = bfs_distances(g, v);
        if dist.iter().any(Option::is_none) {
            return GraphMetrics { eccentricity: vec![None; n], diameter: None };
        }
        ecc.push(dist.into_iter().flatten().max());
    }
    let diameter = Some(ecc.iter().flatten().copied().max().unwrap_or(0));
    GraphMetrics { eccentricity: ecc, diameter }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_metrics() {
        let g = Graph::path(5);
        let m = eccentricities_and_diameter(&g);
        assert_eq!(m.diameter, Some(4));
        assert_eq!(m.eccentricity, vec![Some(4), Some(3), Some(2), Some(3), Some(4)]);
        assert_eq!(bfs_layers(&g, 2).unwrap(), vec![vec![2], vec![1, 3], vec![0, 4]]);
    }

    #[test]
    fn disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(eccentricities_and_diameter(&g).diameter, None);
        assert_eq!(components(&g), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(bfs_layers(&g, 0).unwrap(), vec![vec![0], vec![1]]);
        assert!(bfs_layers(&g, 9).is_err());
    }

    #[test]
    fn cycle_star_and_two_triangles() {
        let m = eccentricities_and_diameter(&Graph::cycle(6));
        assert_eq!((m.eccentricity, m.diameter), (vec![Some(3); 6], Some(3)));
        let m = eccentricities_and_diameter(&Graph::star(4));
        assert_eq!(m.eccentricity[0], Some(1));
        assert_eq!(m.diameter, Some(2));
        // a-b-c and d-e-f joined by a-d
        let h = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let m = eccentricities_and_diameter(&h);
        assert_eq!(m.eccentricity, vec![Some(2), Some(3), Some(3), Some(2), Some(3), Some(3)]);
        assert_eq!(bfs_layers(&Graph::complete(3), 0).unwrap(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn single_node() {
        let m = eccentricities_and_diameter(&Graph::empty(1));
        assert_eq!(m.diameter, Some(0));
    }
}
