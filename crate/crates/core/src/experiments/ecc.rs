use super::report::Report;
use super::ExperimentSpec;
use crate::error::{input, Result};
use crate::gen::{Rng, Stream};
use crate::graph::{bfs_distances, Graph, Node};

pub const MAX_ECC_N: usize = 1000;

/// Whether some triangle `{x, y, z}` and `d` in `{ecc(u) - 2, ecc(u) - 3}`
/// have `dist(u, x) = d` with `x` the only neighbor of `y` at distance `d`
/// from `u`. The third corner may lie in any layer. `None` when
/// `ecc(u) < 2` or `u` does not reach every node.
pub fn ecc_property_holds(g: &Graph, u: Node) -> Option<bool> {
    let dist: Vec<usize> = bfs_distances(g, u).into_iter().collect::<Option<_>>()?;
    let ecc = *dist.iter().max()?;
    if ecc < 2 {
        return None;
    }
    let ds = [ecc - 2, ecc.wrapping_sub(3)];
    Some(ds.iter().filter(|&&d| d <= ecc).any(|&d| layer_has_witness(g, &dist, d)))
}

fn layer_has_witness(g: &Graph, dist: &[usize], d: usize) -> bool {
    (0..g.n()).any(|y| {
        let mut in_layer = g.neighbors(y).iter().filter(|&&v| dist[v] == d);
        match (in_layer.next(), in_layer.next()) {
            (Some(&x), None) => g.common_neighbor_count(x, y) > 0,
            _ => false,
        }
    })
}

/// Per cell: the fraction of (seed, sampled root) pairs with the property;
/// roots with eccentricity below 2 are vacuous.
pub fn exp_eccentricity_lemma(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    let mut rows = Vec::new();
    for (ci, cell) in spec.cells.iter().enumerate() {
        if cell.n > MAX_ECC_N {
            return input(format!("eccentricity experiment takes n <= {MAX_ECC_N}, not {}", cell.n));
        }
        let mut row = spec.row(ci);
        for t in 0..spec.trials {
            let seed = spec.seed(ci, t);
            let g = spec.family.graph(cell.n, cell.p, seed)?;
            let k = spec.sample.min(g.n());
            for u in Rng::new(seed, Stream::Roots).sample_distinct(g.n(), k) {
                row.trials += 1;
                match ecc_property_holds(&g, u) {
                    None => row.vacuous += 1,
                    Some(true) => row.successes += 1,
                    Some(false) => {}
                }
            }
        }
        rows.push(row.finish());
    }
    Ok(Report::new(rows))
}
