use super::rng::{threshold53, Rng, Stream};
use crate::error::{input, Result};
use crate::graph::Graph;

/// Samples G(n, p): one draw per pair `(i, j)`, `i < j`, in lexicographic
/// order from the `Graph` stream of `seed`.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return input(format!("edge probability {p} outside [0, 1]"));
    }
    let t = threshold53(p);
    let mut rng = Rng::new(seed, Stream::Graph);
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.chance(t) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    // pushes arrive in increasing order for both endpoints
    Ok(Graph::from_adjacency(adj))
}
