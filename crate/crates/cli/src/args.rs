use std::fmt;
use std::path::{Path, PathBuf};

use anonsim::gen::sample_gnp;
use anonsim::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Violation = 2,
    ThresholdMiss = 3,
}

/// Bad arguments, unreadable files or invalid graphs.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<anonsim::Error> for CliError {
    fn from(e: anonsim::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<anonsim::graph::GraphError> for CliError {
    fn from(e: anonsim::graph::GraphError) -> Self {
        CliError(e.to_string())
    }
}

pub fn fail<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError(msg.into()))
}

/// Writes `text` to `out`, or to stdout.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))
}

/// `n,p`.
pub fn parse_gnp(s: &str) -> Result<(usize, f64), String> {
    let (n, p) = s.split_once(',').ok_or("expected `n,p`")?;
    let n = n.trim().parse().map_err(|_| format!("bad node count {n:?}"))?;
    let p = p.trim().parse().map_err(|_| format!("bad probability {p:?}"))?;
    Ok((n, p))
}

pub fn parse_model(s: &str) -> Result<anonsim::sim::ModelKind, String> {
    s.parse()
}

/// A graph file or a seeded `G(n, p)`.
#[derive(clap::Args, Debug, Clone)]
pub struct GraphSource {
    /// Graph in the plain-text format: `n m`, then one `u v` line per edge.
    #[arg(long, value_name = "FILE", conflicts_with = "gnp")]
    pub graph: Option<PathBuf>,
    /// Sample G(n, p).
    #[arg(long, value_name = "N,P", value_parser = parse_gnp)]
    pub gnp: Option<(usize, f64)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GraphSource {
    pub fn gnp(n: usize, p: f64, seed: u64) -> GraphSource {
        GraphSource { graph: None, gnp: Some((n, p)), seed }
    }

    pub fn given(&self) -> bool {
        self.graph.is_some() || self.gnp.is_some()
    }

    pub fn load(&self) -> Result<Graph, CliError> {
        match (&self.graph, self.gnp) {
            (Some(path), _) => Ok(Graph::from_text(&read(path)?)?),
            (None, Some((n, p))) => Ok(sample_gnp(n, p, self.seed)?),
            (None, None) => fail("give --graph FILE or --gnp N,P"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_argument() {
        assert_eq!(parse_gnp("100,0.5"), Ok((100, 0.5)));
        assert_eq!(parse_gnp(" 7 , 1 "), Ok((7, 1.0)));
        assert!(parse_gnp("100").is_err());
        assert!(parse_gnp("x,0.5").is_err());
    }
}
