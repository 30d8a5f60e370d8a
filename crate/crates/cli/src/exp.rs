use std::path::PathBuf;
use std::time::Instant;

use anonsim::experiments::{
    exp_cover_invariance, exp_eccentricity_lemma, exp_exhaustive_soundness, exp_id_collision, exp_solvers,
    exp_switch_learn5, exp_triangle, ExperimentSpec, Family, Report, Thresholds,
};
use clap::ValueEnum;

use crate::args::{emit, fail, CliError, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpName {
    IdCollision,
    Triangle,
    Cover,
    EccLemma,
    Exhaustive,
    Switch,
    Solvers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(clap::Args, Debug)]
pub struct ExpArgs {
    #[arg(value_enum)]
    pub name: ExpName,
    /// Algorithm within the experiment; each experiment has a default.
    #[arg(long)]
    pub algo: Option<String>,
    /// Node counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Edge probabilities, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "eps")]
    pub p: Vec<f64>,
    /// Exponents, comma separated; each cell uses p = n^(eps - 1).
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    /// Modulus C of the identifier scheme; derived from the cell otherwise.
    #[arg(long)]
    pub c_mod: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Seed base; trial t of cell i uses seed + i * trials + t.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// gnp, cycle, complete, naive6, diameter3, appc-path or fig1.
    #[arg(long, default_value = "gnp")]
    pub family: String,
    /// Rounds of the cover experiment.
    #[arg(long, default_value_t = 5)]
    pub rounds: u32,
    /// Roots sampled per graph by the eccentricity experiment.
    #[arg(long, default_value_t = 30)]
    pub sample: usize,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Print the resolved experiment settings and elapsed time to stderr.
    #[arg(long)]
    pub trace: bool,
    /// Threshold file; keys it leaves out keep their built-in values.
    #[arg(long, value_name = "FILE")]
    pub thresholds: Option<PathBuf>,
    /// Threshold key every row's success fraction must reach.
    #[arg(long, value_name = "KEY", conflicts_with = "min_fraction")]
    pub threshold: Option<String>,
    /// Minimum success fraction for every row.
    #[arg(long)]
    pub min_fraction: Option<f64>,
}

impl ExpName {
    fn default_algorithm(self) -> &'static str {
        match self {
            ExpName::IdCollision => "ac",
            ExpName::Triangle => "sound",
            ExpName::Cover => "universal",
            ExpName::EccLemma => "bfs",
            ExpName::Exhaustive => "maxdegree",
            ExpName::Switch => "quadruple",
            ExpName::Solvers => "collapse",
        }
    }

    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

pub fn spec(a: &ExpArgs) -> Result<ExperimentSpec, CliError> {
    let family = Family::parse(&a.family)?;
    let algo = a.algo.as_deref().unwrap_or(a.name.default_algorithm());
    let mut spec = ExperimentSpec::new(&a.name.name(), algo)
        .family(family)
        .trials(a.trials)
        .seed_base(a.seed)
        .rounds(a.rounds)
        .sample(a.sample);
    spec = match (a.p.is_empty(), a.eps.is_empty()) {
        (false, _) => spec.grid(&a.n, &a.p),
        (true, false) => spec.eps_grid(&a.n, &a.eps),
        (true, true) if family.is_fixed() => spec.grid(&a.n, &[0.0]),
        (true, true) => return fail("give --p or --eps"),
    };
    if let Some(c) = a.c_mod {
        spec = spec.c_mod(c);
    }
    Ok(spec)
}

pub fn execute(name: ExpName, spec: &ExperimentSpec) -> anonsim::Result<Report> {
    match name {
        ExpName::IdCollision => exp_id_collision(spec),
        ExpName::Triangle => exp_triangle(spec),
        ExpName::Cover => exp_cover_invariance(spec),
        ExpName::EccLemma => exp_eccentricity_lemma(spec),
        ExpName::Exhaustive => exp_exhaustive_soundness(spec),
        ExpName::Switch => exp_switch_learn5(spec),
        ExpName::Solvers => exp_solvers(spec),
    }
}

pub fn exp(a: &ExpArgs) -> Result<Status, CliError> {
    let spec = spec(a)?;
    let min = minimum(a)?;
    if a.trace {
        eprintln!("{}", serde_json::to_string(&spec).expect("spec serializes"));
    }
    let start = Instant::now();
    let report = execute(a.name, &spec)?;
    if a.trace {
        eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    let text = match a.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json() + "\n",
    };
    emit(a.out.as_deref(), &text)?;
    Ok(status(&report, min))
}

fn minimum(a: &ExpArgs) -> Result<Option<f64>, CliError> {
    if let Some(m) = a.min_fraction {
        if !(0.0..=1.0).contains(&m) {
            return fail(format!("--min-fraction {m} outside [0, 1]"));
        }
        return Ok(Some(m));
    }
    let Some(key) = &a.threshold else { return Ok(None) };
    let t = match &a.thresholds {
        Some(path) => Thresholds::load(path)?,
        None => Thresholds::default(),
    };
    match t.get(key) {
        Some(v) => Ok(Some(v)),
        None => fail(format!("unknown threshold {key:?}; known: {}", Thresholds::keys().join(", "))),
    }
}

/// Violations first, then rows below `min`; rows with no scored trial are
/// skipped.
pub fn status(report: &Report, min: Option<f64>) -> Status {
    if report.violations() > 0 {
        eprintln!("{} invariant violations", report.violations());
        return Status::Violation;
    }
    let Some(min) = min else { return Status::Ok };
    let misses: Vec<_> =
        report.rows.iter().filter(|r| r.trials > r.vacuous && r.fraction < min).collect();
    for r in &misses {
        eprintln!("cell {} (n = {}, p = {}): fraction {:.3} below {min}", r.cell, r.n, r.p, r.fraction);
    }
    if misses.is_empty() {
        Status::Ok
    } else {
        Status::ThresholdMiss
    }
}
