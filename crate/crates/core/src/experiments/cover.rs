use super::report::Report;
use super::{ExperimentSpec, Family};
use crate::error::{input, Result};
use crate::gen::{bipartite_double_cover, fig1, CoveringMap};
use crate::labeling::UniversalProgram;
use crate::sim::{Engine, ModelKind, RunOptions, TraceLevel};

/// Node-round pairs compared between a cover and its base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoverMatch {
    pub pairs: u64,
    pub matched: u64,
}

impl CoverMatch {
    pub fn exact(&self) -> bool {
        self.pairs == self.matched
    }
}

/// Runs the full-information program for `rounds` rounds under MB on both
/// sides of `cm` and compares every source node's state, halting round and
/// output with those of its image, round by round.
pub fn cover_matches(engine: &mut Engine, cm: &CoveringMap, rounds: u32) -> Result<CoverMatch> {
    let prog = UniversalProgram { rounds };
    let opts = RunOptions::default().traced(TraceLevel::States).with_max_rounds(rounds as usize + 1);
    let up = engine.run(&cm.source, &prog, ModelKind::Mb, &opts)?;
    let down = engine.run(&cm.target, &prog, ModelKind::Mb, &opts)?;
    let mut m = CoverMatch::default();
    for r in 0..=rounds as usize {
        for (v, &x) in cm.map.iter().enumerate() {
            m.pairs += 1;
            let same_state = up.state_digest(r, v) == down.state_digest(r, x);
            let same_halt = up.halt_rounds[v] == down.halt_rounds[x];
            let same_out = up.outputs[v] == down.outputs[x];
            if same_state && same_halt && same_out {
                m.matched += 1;
            }
        }
    }
    Ok(m)
}

/// Per seed: the bipartite double cover of `G(n, p)`, or both covers of
/// the 6-node pair for [`Family::Fig1`]. Success is a fully matching seed;
/// any mismatch is a violation.
pub fn exp_cover_invariance(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    if spec.rounds > 6 {
        return input(format!("cover experiment runs at most 6 rounds, not {}", spec.rounds));
    }
    let mut engine = Engine::default();
    let mut rows = Vec::new();
    for (ci, cell) in spec.cells.iter().enumerate() {
        let mut row = spec.row(ci);
        let maps: Vec<CoveringMap> = match spec.family {
            Family::Fig1 => {
                let f = fig1();
                vec![f.f_to_g, f.f_to_h]
            }
            family => (0..spec.trials)
                .map(|t| Ok(bipartite_double_cover(&family.graph(cell.n, cell.p, spec.seed(ci, t))?)))
                .collect::<Result<_>>()?,
        };
        for cm in &maps {
            let m = cover_matches(&mut engine, cm, spec.rounds)?;
            row.trials += 1;
            row.rounds(spec.rounds as usize);
            if m.exact() {
                row.successes += 1;
            } else {
                row.violations += 1;
            }
        }
        rows.push(row.finish());
    }
    Ok(Report::new(rows))
}
