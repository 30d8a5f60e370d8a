use super::report::Report;
use super::ExperimentSpec;
use crate::error::Result;
use crate::gen::random_ids;
use crate::graph::eccentricities_and_diameter;
use crate::protocols::{
    maxdegree_truth, unique_maxdegree_with, CollapseSolver, LeaderPlugin, ProblemPlugin, SoundSolverSb4,
    MAXDEGREE_ROUNDS, SB4_ROUNDS,
};
use crate::sim::{Engine, ModelKind, Outcome, RunOptions};

const ALGORITHMS: [&str; 3] = ["collapse", "sb4", "maxdegree"];

/// Per cell: solved runs of the reconstruct-then-solve protocols (leader
/// plugin) or of Unique MaxDegree. A solved run counts when its labeling
/// is valid and within the round bound (`diam + 3`, exactly 4, exactly 9).
/// Invalid outcomes and wrong labelings are violations.
pub fn exp_solvers(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    if !ALGORITHMS.contains(&spec.algorithm.as_str()) {
        return spec.bad_algorithm(&ALGORITHMS);
    }
    let mut engine = Engine::default();
    let mut rows = Vec::new();
    for (ci, cell) in spec.cells.iter().enumerate() {
        let mut row = spec.row(ci);
        for t in 0..spec.trials {
            let seed = spec.seed(ci, t);
            let g = spec.family.graph(cell.n, cell.p, seed)?;
            let diam = eccentricities_and_diameter(&g).diameter;
            row.trials += 1;
            row.diam(diam);
            let (outcome, rounds, valid, bound) = match spec.algorithm.as_str() {
                "collapse" => {
                    let budget = g.n() as u32 + 3;
                    let opts = RunOptions::default().with_max_rounds(budget as usize + 1);
                    let tr = engine.run(&g, &CollapseSolver::new(LeaderPlugin, budget), ModelKind::Mb, &opts)?;
                    let o = tr.outcome();
                    let valid = o.solved().is_none_or(|l| LeaderPlugin.is_valid(&g, l));
                    let bound = diam.is_some_and(|d| tr.rounds <= d + 3);
                    (shape(&o), tr.rounds, valid, bound)
                }
                "sb4" => {
                    let opts = RunOptions::default().knowing_n().with_max_rounds(SB4_ROUNDS as usize);
                    let tr = engine.run(&g, &SoundSolverSb4::new(LeaderPlugin), ModelKind::Sb, &opts)?;
                    let o = tr.outcome();
                    let valid = o.solved().is_none_or(|l| LeaderPlugin.is_valid(&g, l));
                    (shape(&o), tr.rounds, valid, tr.rounds == SB4_ROUNDS as usize)
                }
                _ => {
                    let tr = unique_maxdegree_with(&mut engine, &g, &random_ids(g.n(), seed))?;
                    row.bits(tr.max_message_bits);
                    let o = tr.outcome();
                    let valid = o.solved().is_none_or(|l| *l == maxdegree_truth(&g));
                    (shape(&o), tr.rounds, valid, tr.rounds == MAXDEGREE_ROUNDS as usize)
                }
            };
            row.rounds(rounds);
            match outcome {
                Outcome::Solved(_) if valid && bound => row.successes += 1,
                Outcome::Solved(_) if valid => row.bound_misses += 1,
                Outcome::Solved(_) | Outcome::Invalid(_) => row.violations += 1,
                Outcome::AllFailed => row.all_failed += 1,
            }
        }
        rows.push(row.finish());
    }
    Ok(Report::new(rows))
}

fn shape<O>(o: &Outcome<O>) -> Outcome<()> {
    match o {
        Outcome::Solved(_) => Outcome::Solved(Vec::new()),
        Outcome::AllFailed => Outcome::AllFailed,
        Outcome::Invalid(why) => Outcome::Invalid(why.clone()),
    }
}
