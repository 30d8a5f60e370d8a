use std::path::PathBuf;

use anonsim::gen::{identity_ids, random_ids};
use anonsim::graph::Graph;
use anonsim::labeling::{choose_modulus, epsilon_from, AcProgram, BesProgram, UniversalProgram};
use anonsim::protocols::{
    anonymous_budget, anonymous_triangle, check_witnesses, triangle_round_cap, CollapseSolver, EngineIds,
    LeaderPlugin, NaiveTriangle, SoundSolverSb4, SoundTriangle, TriangleLabel, UniqueMaxDegree, WitnessCheck,
    MAXDEGREE_ROUNDS, SB4_ROUNDS,
};
use anonsim::sim::{run as simulate, ModelKind, Outcome, RunOptions, TraceLevel, Transcript};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{emit, fail, parse_model, CliError, GraphSource, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    AcIds,
    Bes,
    Cr,
    TriangleSound,
    TriangleAnon,
    TriangleNaive,
    CollapseMb,
    SoundSb4,
    Maxdegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdsArg {
    /// Node `v` gets identifier `v + 1`.
    Identity,
    /// A permutation of `1..=n` drawn from `--seed`.
    PermSeed,
}

#[derive(clap::Args, Debug)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Communication model; defaults to the protocol's own.
    #[arg(long, value_parser = parse_model)]
    pub model: Option<ModelKind>,
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value = "identity")]
    pub ids: IdsArg,
    /// Exponent used to derive the modulus C of the identifier scheme.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Modulus C of the identifier scheme; overrides --eps.
    #[arg(long)]
    pub c_mod: Option<u32>,
    /// Refinement rounds for `cr`.
    #[arg(long, default_value_t = 2)]
    pub rounds: u32,
    /// Record states and messages of every node in every round.
    #[arg(long)]
    pub trace: bool,
    /// Print one `node: s_0,s_1,...` line per node instead of JSON
    /// (`ac-ids` and `bes`).
    #[arg(long)]
    pub dump_ids: bool,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

impl Algo {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    fn default_model(self) -> ModelKind {
        match self {
            Algo::AcIds | Algo::TriangleAnon => ModelKind::Sbstar,
            Algo::Bes | Algo::SoundSb4 => ModelKind::Sb,
            Algo::Cr | Algo::CollapseMb => ModelKind::Mb,
            Algo::TriangleSound | Algo::TriangleNaive | Algo::Maxdegree => ModelKind::BCongest,
        }
    }

    fn allowed_models(self) -> &'static [ModelKind] {
        use ModelKind::*;
        match self {
            Algo::AcIds => &[Sbstar, Mbstar, Sb, Mb],
            Algo::Bes | Algo::Cr => &[Sb, Mb],
            Algo::TriangleSound | Algo::TriangleNaive | Algo::Maxdegree => &[BCongest, Local],
            Algo::TriangleAnon => &[Sbstar],
            Algo::CollapseMb => &[Mb],
            Algo::SoundSb4 => &[Sb],
        }
    }

    /// Sound protocols: anything but all-solved or all-failed breaks them.
    fn sound(self) -> bool {
        !matches!(self, Algo::AcIds | Algo::Bes | Algo::Cr | Algo::TriangleNaive)
    }
}

pub fn run(a: &RunArgs) -> Result<Status, CliError> {
    if a.dump_ids && !matches!(a.algo, Algo::AcIds | Algo::Bes) {
        return fail("--dump-ids applies to ac-ids and bes only");
    }
    let model = a.model.unwrap_or(a.algo.default_model());
    if !a.algo.allowed_models().contains(&model) {
        let names: Vec<&str> = a.algo.allowed_models().iter().map(|m| m.name()).collect();
        return fail(format!("{} runs under {}, not {model}", a.algo.name(), names.join(" or ")));
    }
    let g = a.source.load()?;
    let n = g.n();
    let ids = match a.ids {
        IdsArg::Identity => identity_ids(n),
        IdsArg::PermSeed => random_ids(n, a.source.seed),
    };
    let base = RunOptions::default().traced(if a.trace { TraceLevel::Full } else { TraceLevel::Summary });
    let with_ids = base.clone().with_ids(ids.clone());

    let report = match a.algo {
        Algo::AcIds => {
            let c = modulus(a, n)?;
            let t = simulate(&g, &AcProgram { c }, model, &base)?;
            if a.dump_ids {
                return dump(a, &t.outcome(), |l| l.to_string());
            }
            Report::of(a, &g, &t).field("c", c)
        }
        Algo::Bes => {
            let t = simulate(&g, &BesProgram, model, &base.knowing_n())?;
            if a.dump_ids {
                return dump(a, &t.outcome(), |l| l.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            }
            Report::of(a, &g, &t)
        }
        Algo::Cr => {
            let t = simulate(&g, &UniversalProgram { rounds: a.rounds }, model, &base)?;
            Report::of(a, &g, &t).field("rounds_requested", a.rounds)
        }
        Algo::TriangleSound => {
            let opts = with_ids.with_max_rounds(triangle_round_cap(n));
            let t = simulate(&g, &EngineIds(SoundTriangle::new()), model, &opts)?;
            Report::of(a, &g, &t).witnesses(&g, &ids, &t)
        }
        Algo::TriangleAnon => {
            let c = modulus(a, n)?;
            let opts = base.with_max_rounds(triangle_round_cap(n) + 1).with_budget(anonymous_budget(n, c));
            let t = simulate(&g, &anonymous_triangle(c), model, &opts)?;
            let minted = anonsim::labeling::alg_ac(&g, c);
            Report::of(a, &g, &t).witnesses(&g, &minted, &t).field("c", c)
        }
        Algo::TriangleNaive => {
            let t = simulate(&g, &EngineIds(NaiveTriangle::new()), model, &with_ids.with_max_rounds(3))?;
            Report::of(a, &g, &t).witnesses(&g, &ids, &t)
        }
        Algo::CollapseMb => {
            let budget = n as u32 + 3;
            let opts = base.with_max_rounds(budget as usize + 1);
            let t = simulate(&g, &CollapseSolver::new(LeaderPlugin, budget), model, &opts)?;
            Report::of(a, &g, &t)
        }
        Algo::SoundSb4 => {
            let opts = base.knowing_n().with_max_rounds(SB4_ROUNDS as usize);
            let t = simulate(&g, &SoundSolverSb4::new(LeaderPlugin), model, &opts)?;
            Report::of(a, &g, &t)
        }
        Algo::Maxdegree => {
            let opts = with_ids.with_max_rounds(MAXDEGREE_ROUNDS as usize);
            let t = simulate(&g, &EngineIds(UniqueMaxDegree::new()), model, &opts)?;
            Report::of(a, &g, &t)
        }
    };
    let text = serde_json::to_string_pretty(&report.value).expect("report serializes") + "\n";
    emit(a.out.as_deref(), &text)?;
    Ok(if report.violation { Status::Violation } else { Status::Ok })
}

/// `--c-mod`, else `choose_modulus` of `--eps`, else of the exponent of the
/// sampled `G(n, p)`.
fn modulus(a: &RunArgs, n: usize) -> Result<u32, CliError> {
    if let Some(c) = a.c_mod {
        if c == 0 {
            return fail("--c-mod must be positive");
        }
        return Ok(c);
    }
    let eps = match (a.eps, a.source.gnp) {
        (Some(e), _) => e,
        (None, Some((_, p))) => epsilon_from(n, p)?,
        (None, None) => return fail("a graph file needs --eps or --c-mod"),
    };
    Ok(choose_modulus(eps)?)
}

fn dump<O: Clone + std::fmt::Debug>(a: &RunArgs, outcome: &Outcome<O>, show: impl Fn(&O) -> String) -> Result<Status, CliError> {
    let Some(labels) = outcome.solved() else { return fail(format!("run did not produce labels: {outcome:?}")) };
    let text: String = labels.iter().enumerate().map(|(v, l)| format!("{v}: {}\n", show(l))).collect();
    emit(a.out.as_deref(), &text)?;
    Ok(Status::Ok)
}

struct Report {
    value: Value,
    violation: bool,
}

impl Report {
    fn of<O: Clone + Ord + Serialize>(a: &RunArgs, g: &Graph, t: &Transcript<O>) -> Report {
        let outcome = t.outcome();
        let distinct = outcome.solved().map(|l| {
            let mut v: Vec<&O> = l.iter().collect();
            v.sort();
            v.dedup();
            v.len()
        });
        let mut transcript = t.to_json();
        if !a.trace {
            transcript.as_object_mut().expect("object").remove("per_round");
        }
        let value = json!({
            "algo": a.algo.name(),
            "model": t.model,
            "n": g.n(),
            "m": g.m(),
            "outcome": outcome,
            "distinct_labels": distinct,
            "transcript": transcript,
        });
        let violation = a.algo.sound() && matches!(outcome, Outcome::Invalid(_));
        Report { value, violation }
    }

    fn field(mut self, key: &str, v: impl Serialize) -> Report {
        self.value[key] = json!(v);
        self
    }

    /// Adds the oracle's verdict on the reported triangles; a false witness
    /// from a sound protocol on distinct identifiers is a violation.
    fn witnesses<Id>(mut self, g: &Graph, ids: &[Id], t: &Transcript<TriangleLabel<Id>>) -> Report
    where
        Id: anonsim::labeling::NodeId,
    {
        let labels: Vec<Option<&TriangleLabel<Id>>> =
            t.outputs.iter().map(|o| o.as_ref().and_then(|o| o.label())).collect();
        let check = check_witnesses(g, ids, &labels);
        let distinct = anonsim::labeling::ids_all_distinct(ids);
        if check == WitnessCheck::False && distinct && self.value["algo"] != "triangle-naive" {
            self.violation = true;
        }
        let verdict = match check {
            WitnessCheck::Empty => json!("none"),
            WitnessCheck::Exact(nodes) => json!({ "exact": nodes }),
            WitnessCheck::Scattered => json!("scattered"),
            WitnessCheck::False => json!("false"),
        };
        self.value["witness"] = verdict;
        self.value["ids_distinct"] = json!(distinct);
        self
    }
}
