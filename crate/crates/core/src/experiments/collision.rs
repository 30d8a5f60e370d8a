use super::report::{Report, Row};
use super::ExperimentSpec;
use crate::error::Result;
use crate::graph::Graph;
use crate::labeling::{choose_modulus, color_refinement, ids_all_distinct, AcProgram, BesProgram};
use crate::sim::wire::ceil_log2;
use crate::sim::{Engine, ModelKind, Outcome, RunOptions};

const ALGORITHMS: [&str; 3] = ["ac", "bes", "cr2"];

/// Per cell: how often one-round labels (or `C_2` colors) are all distinct.
/// For `ac`, a message above `ceil(log2 n) + 8` bits is a violation.
pub fn exp_id_collision(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    if !ALGORITHMS.contains(&spec.algorithm.as_str()) {
        return spec.bad_algorithm(&ALGORITHMS);
    }
    let mut engine = Engine::default();
    let mut rows = Vec::new();
    for (ci, cell) in spec.cells.iter().enumerate() {
        let mut row = spec.row(ci);
        for t in 0..spec.trials {
            let g = spec.family.graph(cell.n, cell.p, spec.seed(ci, t))?;
            row.trials += 1;
            if distinct(spec, &mut engine, &g, &mut row)? {
                row.successes += 1;
            } else {
                row.collisions += 1;
            }
        }
        rows.push(row.finish());
    }
    Ok(Report::new(rows))
}

fn distinct(spec: &ExperimentSpec, engine: &mut Engine, g: &Graph, row: &mut Row) -> Result<bool> {
    let n = g.n();
    match spec.algorithm.as_str() {
        "ac" => {
            let c = match spec.c_mod {
                Some(c) => c,
                None => choose_modulus(row.eps.unwrap_or(0.5))?,
            };
            let t = engine.run(g, &AcProgram { c }, ModelKind::Sbstar, &RunOptions::default())?;
            row.rounds(t.rounds);
            row.bits(t.max_message_bits);
            if t.max_message_bits > ceil_log2(n as u64) as u64 + 8 {
                row.violations += 1;
            }
            Ok(match t.outcome() {
                Outcome::Solved(ids) => ids_all_distinct(&ids),
                _ => {
                    row.violations += 1;
                    false
                }
            })
        }
        "bes" => {
            if n < 2 {
                return Ok(n == 1);
            }
            let t = engine.run(g, &BesProgram, ModelKind::Sb, &RunOptions::default().knowing_n())?;
            row.rounds(t.rounds);
            row.bits(t.max_message_bits);
            Ok(t.outcome().solved().is_some_and(ids_all_distinct))
        }
        _ => {
            row.rounds(2);
            Ok(color_refinement(g, 2)[2].num_classes() == n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::Family;

    #[test]
    fn regular_graphs_always_collide() {
        let spec = ExperimentSpec::new("id-collision", "ac").grid(&[12], &[0.5]).family(Family::Cycle).trials(3).c_mod(7);
        let rep = exp_id_collision(&spec).unwrap();
        assert_eq!(rep.rows[0].successes, 0);
        assert_eq!(rep.rows[0].collisions, 3);
        assert_eq!(rep.violations(), 0);
    }

    #[test]
    fn two_refinement_rounds_separate_dense_graphs() {
        let spec = ExperimentSpec::new("id-collision", "cr2").grid(&[200], &[0.5]).trials(5).seed_base(11);
        assert_eq!(exp_id_collision(&spec).unwrap().rows[0].successes, 5);
    }

    #[test]
    fn one_round_labels_stay_in_budget() {
        for alg in ["ac", "bes"] {
            let spec = ExperimentSpec::new("id-collision", alg).grid(&[100, 400], &[0.1]).trials(5).seed_base(11);
            let rep = exp_id_collision(&spec).unwrap();
            assert_eq!(rep.violations(), 0);
            assert!(rep.rows.iter().all(|r| r.max_rounds == 1), "{alg}: {:?}", rep.rows);
            assert!(rep.rows[1].successes > 0, "{alg}: {:?}", rep.rows[1]);
        }
    }

    #[test]
    fn rejects_unknown_algorithm_and_bad_grid() {
        assert!(exp_id_collision(&ExperimentSpec::new("x", "nope").grid(&[5], &[0.5])).is_err());
        assert!(exp_id_collision(&ExperimentSpec::new("x", "ac").grid(&[5], &[1.5])).is_err());
        assert!(exp_id_collision(&ExperimentSpec::new("x", "ac").grid(&[5], &[0.5]).trials(0)).is_err());
    }
}
