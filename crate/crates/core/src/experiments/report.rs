use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// One grid cell. `trials` counts units of work (runs, roots, seeds);
/// `vacuous` of them had nothing to check and are excluded from
/// `fraction`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub experiment: String,
    pub algorithm: String,
    pub cell: usize,
    pub n: usize,
    pub p: f64,
    pub eps: Option<f64>,
    pub trials: u64,
    pub successes: u64,
    pub fraction: f64,
    pub all_failed: u64,
    pub vacuous: u64,
    /// Exact-invariant violations; any nonzero value is a defect.
    pub violations: u64,
    /// Runs beyond the cell's round bound.
    pub bound_misses: u64,
    pub collisions: u64,
    pub mean_rounds: f64,
    pub max_rounds: u64,
    pub mean_diam: f64,
    pub max_message_bits: u64,
    #[serde(skip)]
    rounds_sum: u64,
    #[serde(skip)]
    diam_sum: u64,
    #[serde(skip)]
    diam_count: u64,
}

impl Row {
    pub fn new(experiment: &str, algorithm: &str, cell: usize, n: usize, p: f64, eps: Option<f64>) -> Row {
        Row {
            experiment: experiment.into(),
            algorithm: algorithm.into(),
            cell,
            n,
            p,
            eps,
            trials: 0,
            successes: 0,
            fraction: 0.0,
            all_failed: 0,
            vacuous: 0,
            violations: 0,
            bound_misses: 0,
            collisions: 0,
            mean_rounds: 0.0,
            max_rounds: 0,
            mean_diam: 0.0,
            max_message_bits: 0,
            rounds_sum: 0,
            diam_sum: 0,
            diam_count: 0,
        }
    }

    pub fn rounds(&mut self, r: usize) {
        self.rounds_sum += r as u64;
        self.max_rounds = self.max_rounds.max(r as u64);
    }

    pub fn diam(&mut self, d: Option<usize>) {
        if let Some(d) = d {
            self.diam_sum += d as u64;
            self.diam_count += 1;
        }
    }

    pub fn bits(&mut self, b: u64) {
        self.max_message_bits = self.max_message_bits.max(b);
    }

    /// Fills in the derived columns.
    pub fn finish(mut self) -> Row {
        let checked = self.trials - self.vacuous;
        self.fraction = if checked == 0 { 0.0 } else { self.successes as f64 / checked as f64 };
        if self.trials > 0 {
            self.mean_rounds = self.rounds_sum as f64 / self.trials as f64;
        }
        if self.diam_count > 0 {
            self.mean_diam = self.diam_sum as f64 / self.diam_count as f64;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(rows: Vec<Row>) -> Report {
        Report { schema_version: SCHEMA_VERSION, rows }
    }

    pub fn violations(&self) -> u64 {
        self.rows.iter().map(|r| r.violations).sum()
    }

    /// Smallest success fraction over the non-vacuous cells.
    pub fn min_fraction(&self) -> f64 {
        self.rows.iter().filter(|r| r.trials > r.vacuous).map(|r| r.fraction).fold(1.0, f64::min)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("rows serialize");
        }
        if self.rows.is_empty() {
            w.write_record(HEADER).expect("header writes");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const HEADER: [&str; 18] = [
    "experiment",
    "algorithm",
    "cell",
    "n",
    "p",
    "eps",
    "trials",
    "successes",
    "fraction",
    "all_failed",
    "vacuous",
    "violations",
    "bound_misses",
    "collisions",
    "mean_rounds",
    "max_rounds",
    "mean_diam",
    "max_message_bits",
];
