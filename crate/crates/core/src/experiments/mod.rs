//! Seeded experiment grids and their reports.
//!
//! Every experiment maps an [`ExperimentSpec`] to a [`Report`] with one row
//! per grid cell. Trial `t` of cell `c` uses seed
//! `seed_base + c * trials + t`, so cells reproduce independently.

mod collision;
mod cover;
mod ecc;
mod exhaustive;
mod report;
mod solvers;
mod switch;
mod thresholds;
mod triangle;

use serde::Serialize;

use crate::error::{input, Result};
use crate::gen::{appc_paths, diameter3_fixture, naive_counterexample_fixture, sample_gnp};
use crate::graph::Graph;
use crate::labeling::epsilon_from;

pub use collision::exp_id_collision;
pub use cover::{cover_matches, exp_cover_invariance, CoverMatch};
pub use ecc::{ecc_property_holds, exp_eccentricity_lemma};
pub use exhaustive::exp_exhaustive_soundness;
pub use report::{Report, Row, SCHEMA_VERSION};
pub use solvers::exp_solvers;
pub use switch::exp_switch_learn5;
pub use thresholds::Thresholds;
pub use triangle::exp_triangle;

/// Where the graphs of a cell come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Gnp,
    /// `C_n`; `p` is ignored.
    Cycle,
    /// `K_n`; `p` is ignored.
    Complete,
    /// The fixed naive-triangle counterexample on 6 nodes.
    NaiveFixture,
    /// The diameter-3 fixture on 6 nodes.
    Diameter3,
    /// The long-tailed graph `G` of the max-degree pair.
    AppcPath,
    /// The two covers of the 6-node pair; one trial each.
    Fig1,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s {
            "gnp" => Family::Gnp,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "naive-fixture" | "naive6" => Family::NaiveFixture,
            "diameter3" => Family::Diameter3,
            "appc-path" => Family::AppcPath,
            "fig1" => Family::Fig1,
            _ => return input(format!("unknown graph family {s:?}")),
        })
    }

    /// Whether the family ignores the seed.
    pub fn is_fixed(self) -> bool {
        !matches!(self, Family::Gnp)
    }

    /// The graph of one trial.
    pub fn graph(self, n: usize, p: f64, seed: u64) -> Result<Graph> {
        Ok(match self {
            Family::Gnp => sample_gnp(n, p, seed)?,
            Family::Cycle if n >= 3 => Graph::cycle(n),
            Family::Complete => Graph::complete(n),
            Family::NaiveFixture => naive_counterexample_fixture().0,
            Family::Diameter3 => diameter3_fixture(),
            Family::AppcPath if n >= 6 => appc_paths(n).0,
            Family::Fig1 => crate::gen::fig1().g,
            _ => return input(format!("family {self:?} undefined for n = {n}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub n: usize,
    pub p: f64,
}

impl Cell {
    /// `1 + ln p / ln n`, when defined.
    pub fn eps(&self) -> Option<f64> {
        epsilon_from(self.n, self.p).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub algorithm: String,
    pub family: Family,
    pub cells: Vec<Cell>,
    pub trials: usize,
    pub seed_base: u64,
    /// Modulus of `A_C`; derived from the cell's `eps` when absent.
    pub c_mod: Option<u32>,
    /// Round count for the cover experiment.
    pub rounds: u32,
    /// Roots sampled per graph in the eccentricity experiment.
    pub sample: usize,
}

impl ExperimentSpec {
    pub fn new(name: &str, algorithm: &str) -> Self {
        ExperimentSpec {
            name: name.into(),
            algorithm: algorithm.into(),
            family: Family::Gnp,
            cells: Vec::new(),
            trials: 1,
            seed_base: 0,
            c_mod: None,
            rounds: 5,
            sample: 30,
        }
    }

    /// The grid `ns x ps`, in that nesting order.
    pub fn grid(mut self, ns: &[usize], ps: &[f64]) -> Self {
        self.cells = ns.iter().flat_map(|&n| ps.iter().map(move |&p| Cell { n, p })).collect();
        self
    }

    /// The grid `ns x eps` with `p = n^(eps - 1)`.
    pub fn eps_grid(mut self, ns: &[usize], eps: &[f64]) -> Self {
        self.cells =
            ns.iter().flat_map(|&n| eps.iter().map(move |&e| Cell { n, p: (n as f64).powf(e - 1.0) })).collect();
        self
    }

    pub fn family(mut self, f: Family) -> Self {
        self.family = f;
        self
    }

    pub fn trials(mut self, t: usize) -> Self {
        self.trials = t;
        self
    }

    pub fn seed_base(mut self, s: u64) -> Self {
        self.seed_base = s;
        self
    }

    pub fn c_mod(mut self, c: u32) -> Self {
        self.c_mod = Some(c);
        self
    }

    pub fn rounds(mut self, r: u32) -> Self {
        self.rounds = r;
        self
    }

    pub fn sample(mut self, k: usize) -> Self {
        self.sample = k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return input("trials must be at least 1");
        }
        if self.cells.is_empty() {
            return input("empty parameter grid");
        }
        for c in &self.cells {
            if !(0.0..=1.0).contains(&c.p) {
                return input(format!("edge probability {} outside [0, 1]", c.p));
            }
            if c.n == 0 {
                return input("n must be positive");
            }
        }
        Ok(())
    }

    pub fn seed(&self, cell: usize, trial: usize) -> u64 {
        self.seed_base + (cell * self.trials + trial) as u64
    }

    pub(crate) fn row(&self, cell: usize) -> Row {
        let c = self.cells[cell];
        Row::new(&self.name, &self.algorithm, cell, c.n, c.p, c.eps())
    }

    pub(crate) fn bad_algorithm<T>(&self, allowed: &[&str]) -> Result<T> {
        input(format!("experiment {} has no algorithm {:?}; expected one of {allowed:?}", self.name, self.algorithm))
    }
}
