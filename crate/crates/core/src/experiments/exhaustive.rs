use super::report::{Report, Row};
use super::ExperimentSpec;
use crate::error::{input, Result};
use crate::gen::{Rng, Stream};
use crate::graph::{eccentricities_and_diameter, enumerate_connected_graphs, Graph};
use crate::protocols::{
    check_witnesses, maxdegree_truth, triangle_round_cap, unique_maxdegree_with, EngineIds, LeaderPlugin,
    ProblemPlugin, SoundSolverSb4, SoundTriangle, TriangleLabel, WitnessCheck, MAXDEGREE_ROUNDS, SB4_ROUNDS,
};
use crate::sim::{Engine, ModelKind, Outcome, RunOptions};

const ALGORITHMS: [&str; 3] = ["maxdegree", "triangle", "sb4"];

fn max_n(algorithm: &str) -> usize {
    if algorithm == "maxdegree" {
        7
    } else {
        6
    }
}

/// Every connected graph on `n` nodes, each under `trials` identifier
/// permutations drawn from seed `seed_base + graph index`. A run that is
/// neither all-failed nor a correct solution, or that breaks the round
/// count, is a violation. For `maxdegree`, every diameter-2 graph with a
/// unique maximum-degree node must be solved.
pub fn exp_exhaustive_soundness(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    if !ALGORITHMS.contains(&spec.algorithm.as_str()) {
        return spec.bad_algorithm(&ALGORITHMS);
    }
    let limit = max_n(&spec.algorithm);
    let mut engine = Engine::default();
    let mut rows = Vec::new();
    for (ci, cell) in spec.cells.iter().enumerate() {
        if cell.n > limit {
            return input(format!("exhaustive {} runs up to n = {limit}, not {}", spec.algorithm, cell.n));
        }
        let mut row = spec.row(ci);
        for (gi, g) in enumerate_connected_graphs(cell.n)?.enumerate() {
            let mut rng = Rng::new(spec.seed_base + gi as u64, Stream::Ids);
            let kernel = spec.algorithm == "maxdegree" && in_kernel(&g);
            for _ in 0..spec.trials {
                let ids: Vec<u32> = rng.permutation(g.n()).into_iter().map(|x| x as u32 + 1).collect();
                row.trials += 1;
                match spec.algorithm.as_str() {
                    "maxdegree" => maxdegree(&mut engine, &g, &ids, kernel, &mut row)?,
                    "triangle" => triangle(&mut engine, &g, &ids, &mut row)?,
                    _ => sb4(&mut engine, &g, &mut row)?,
                }
            }
        }
        rows.push(row.finish());
    }
    Ok(Report::new(rows))
}

/// Diameter at most 2 and a unique maximum-degree node.
fn in_kernel(g: &Graph) -> bool {
    let d = g.max_degree();
    eccentricities_and_diameter(g).diameter.is_some_and(|x| x <= 2)
        && g.degrees().iter().filter(|&&x| x == d).count() == 1
}

fn classify<O: Clone>(outcome: &Outcome<O>, row: &mut Row) {
    match outcome {
        Outcome::Solved(_) => row.successes += 1,
        Outcome::AllFailed => row.all_failed += 1,
        Outcome::Invalid(_) => row.violations += 1,
    }
}

fn maxdegree(engine: &mut Engine, g: &Graph, ids: &[u32], kernel: bool, row: &mut Row) -> Result<()> {
    let t = unique_maxdegree_with(engine, g, ids)?;
    row.rounds(t.rounds);
    row.bits(t.max_message_bits);
    let outcome = t.outcome();
    classify(&outcome, row);
    let wrong = match &outcome {
        Outcome::Solved(l) => *l != maxdegree_truth(g),
        Outcome::AllFailed => kernel,
        Outcome::Invalid(_) => false,
    };
    if wrong || t.rounds != MAXDEGREE_ROUNDS as usize {
        row.violations += 1;
    }
    Ok(())
}

fn triangle(engine: &mut Engine, g: &Graph, ids: &[u32], row: &mut Row) -> Result<()> {
    let opts = RunOptions::default().with_ids(ids.to_vec()).with_max_rounds(triangle_round_cap(g.n()));
    let t = engine.run(g, &EngineIds(SoundTriangle::new()), ModelKind::BCongest, &opts)?;
    row.rounds(t.rounds);
    row.bits(t.max_message_bits);
    let outcome = t.outcome();
    classify(&outcome, row);
    let labels: Vec<Option<&TriangleLabel<u32>>> =
        t.outputs.iter().map(|o| o.as_ref().and_then(|o| o.label())).collect();
    let check = check_witnesses(g, ids, &labels);
    let wrong = match outcome {
        Outcome::Solved(_) => !matches!(check, WitnessCheck::Exact(_)),
        _ => check == WitnessCheck::False,
    };
    if wrong {
        row.violations += 1;
    }
    Ok(())
}

fn sb4(engine: &mut Engine, g: &Graph, row: &mut Row) -> Result<()> {
    let opts = RunOptions::default().knowing_n().with_max_rounds(SB4_ROUNDS as usize);
    let t = engine.run(g, &SoundSolverSb4::new(LeaderPlugin), ModelKind::Sb, &opts)?;
    row.rounds(t.rounds);
    let outcome = t.outcome();
    classify(&outcome, row);
    let wrong = match &outcome {
        Outcome::Solved(l) => !LeaderPlugin.is_valid(g, l),
        _ => false,
    };
    if wrong || t.rounds != SB4_ROUNDS as usize {
        row.violations += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_are_clean() {
        for alg in ALGORITHMS {
            let spec = ExperimentSpec::new("exhaustive", alg).grid(&[1, 2, 3, 4], &[0.0]).trials(2);
            let rep = exp_exhaustive_soundness(&spec).unwrap();
            assert_eq!(rep.violations(), 0, "{alg}: {:?}", rep.rows);
            // 1 + 1 + 4 + 38 labeled connected graphs
            assert_eq!(rep.rows.iter().map(|r| r.trials).sum::<u64>(), 2 * 44);
        }
    }

    #[test]
    fn size_limits() {
        let spec = ExperimentSpec::new("exhaustive", "triangle").grid(&[7], &[0.0]);
        assert!(exp_exhaustive_soundness(&spec).is_err());
    }
}
