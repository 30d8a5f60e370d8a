use super::{Graph, GraphError, Node};

pub const MAX_ENUMERATION_N: usize = 7;

/// Iterator over all labeled connected graphs on `0..n`, in increasing
/// order of the edge mask over pairs `(i, j)`, `i < j`, listed
/// lexicographically.
pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(Node, Node)>,
    next: u64,
    end: u64,
}

pub fn enumerate_connected_graphs(n: usize) -> Result<ConnectedGraphs, GraphError> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(GraphError::Capacity { what: "enumerate_connected_graphs", limit: MAX_ENUMERATION_N, n });
    }
    let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let end = 1u64 << pairs.len();
    Ok(ConnectedGraphs { n, pairs, next: 0, end })
}

impl ConnectedGraphs {
    fn connected(&self, mask: u64) -> bool {
        let mut rows = [0u8; MAX_ENUMERATION_N];
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        let full = ((1u16 << self.n) - 1) as u8;
        let mut seen = 1u8;
        loop {
            let grown = (0..self.n).filter(|&v| seen >> v & 1 == 1).fold(seen, |s, v| s | rows[v]);
            if grown == seen {
                return seen == full;
            }
            seen = grown;
        }
    }
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if self.connected(mask) {
                let mut adj = vec![Vec::new(); self.n];
                for (k, &(i, j)) in self.pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        adj[i].push(j);
                        adj[j].push(i);
                    }
                }
                for l in &mut adj {
                    l.sort_unstable();
                }
                return Some(Graph::from_adjacency(adj));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_oeis_a001187() {
        let expected = [1usize, 1, 4, 38, 728, 26704];
        for (i, &c) in expected.iter().enumerate() {
            let graphs: Vec<_> = enumerate_connected_graphs(i + 1).unwrap().collect();
            assert_eq!(graphs.len(), c, "n = {}", i + 1);
            assert!(graphs.iter().all(Graph::is_connected));
        }
    }

    #[test]
    fn rejects_large_n() {
        assert!(enumerate_connected_graphs(8).is_err());
        assert!(enumerate_connected_graphs(0).is_err());
    }
}
