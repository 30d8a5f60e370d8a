//! `anonsim`: sample graphs, run single protocols, run seeded experiments
//! and print fixtures.
//!
//! Exit codes: 0 success, 1 input error, 2 an exact invariant was
//! violated, 3 a success fraction fell below its threshold.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod args;
mod exp;
mod fixtures;
mod run;

use args::{emit, CliError, GraphSource, Status};

#[derive(Parser)]
#[command(name = "anonsim", version, about = "Anonymous broadcast models on random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and print it in the plain-text graph format.
    Sample(SampleArgs),
    /// Run one protocol on one graph and print the outcome as JSON.
    Run(run::RunArgs),
    /// Run a seeded experiment grid and print its report.
    Exp(exp::ExpArgs),
    /// Print a built-in fixture.
    Fixtures(fixtures::FixtureArgs),
}

#[derive(clap::Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<std::path::PathBuf>,
}

fn sample(a: &SampleArgs) -> Result<Status, CliError> {
    let g = GraphSource::gnp(a.n, a.p, a.seed).load()?;
    emit(a.out.as_deref(), &g.to_text())?;
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Sample(a) => sample(a),
        Command::Run(a) => run::run(a),
        Command::Exp(a) => exp::exp(a),
        Command::Fixtures(a) => fixtures::fixtures(a),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
