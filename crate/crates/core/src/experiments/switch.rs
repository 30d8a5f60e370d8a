use std::collections::BTreeMap;

use super::report::Report;
use super::ExperimentSpec;
use crate::error::{input, Result};
use crate::gen::{variable_quadruple_switch, Rng, Stream};
use crate::graph::{Graph, Node};
use crate::labeling::{color_refinement_with, CrInterner};

pub const MAX_SWITCH_N: usize = 600;

/// The non-neighbors of `v` (other than `v`) in the largest degree class,
/// smallest degree on ties, in node order.
pub(crate) fn switch_pool(g: &Graph, v: Node) -> Vec<Node> {
    let mut classes: BTreeMap<usize, Vec<Node>> = BTreeMap::new();
    for u in (0..g.n()).filter(|&u| u != v && !g.has_edge(u, v)) {
        classes.entry(g.degree(u)).or_default().push(u);
    }
    let best = classes.values().map(Vec::len).max().unwrap_or(0);
    classes.into_values().find(|c| c.len() == best).unwrap_or_default()
}

/// Per seed on `G(n, p)`: pick `v`, search its pool for a variable
/// quadruple and switch it. Success is a switch found; a switch that
/// changes a degree or a `C_1` color, or leaves the edge set unchanged, is
/// a violation.
pub fn exp_switch_learn5(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    let mut rows = Vec::new();
    for (ci, cell) in spec.cells.iter().enumerate() {
        if cell.n > MAX_SWITCH_N || cell.n == 0 {
            return input(format!("switch experiment takes 1 <= n <= {MAX_SWITCH_N}, not {}", cell.n));
        }
        let mut row = spec.row(ci);
        for t in 0..spec.trials {
            let seed = spec.seed(ci, t);
            let g = spec.family.graph(cell.n, cell.p, seed)?;
            let v = Rng::new(seed, Stream::Search).below(g.n() as u64) as Node;
            row.trials += 1;
            let Some(sw) = variable_quadruple_switch(&g, &switch_pool(&g, v)) else { continue };
            row.successes += 1;
            let h = &sw.graph;
            let mut interner = CrInterner::new();
            let cg = color_refinement_with(&g, 1, &mut interner);
            let ch = color_refinement_with(h, 1, &mut interner);
            let degrees_kept = g.degrees() == h.degrees();
            let colors_kept = cg[1].colors == ch[1].colors;
            let changed = g.edges().ne(h.edges());
            if !(degrees_kept && colors_kept && changed) {
                row.violations += 1;
            }
        }
        rows.push(row.finish());
    }
    Ok(Report::new(rows))
}
