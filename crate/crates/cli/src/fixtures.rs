use std::path::PathBuf;

use anonsim::gen::{appc_paths, bipartite_double_cover, fig1, k4_lift, naive_counterexample_fixture, twisted_triangle_lift};
use clap::ValueEnum;

use crate::args::{emit, fail, CliError, GraphSource, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureName {
    /// The 6-node pair `G`, `H` and their common 12-node cover, as two
    /// covering maps.
    Fig1,
    /// The naive triangle counterexample; identifiers on a comment line.
    Naive6,
    /// The long-tailed and the two-tailed paths on `--n` nodes.
    AppcPaths,
    /// Bipartite double cover of `--graph` or `--gnp`.
    DoubleCover,
    /// Twisted triangle lift of `K4`, or of `--graph` along `--triangle`.
    Lift,
}

#[derive(clap::Args, Debug)]
pub struct FixtureArgs {
    #[arg(value_enum)]
    pub name: FixtureName,
    /// Node count for `appc-paths`.
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[command(flatten)]
    pub source: GraphSource,
    /// Triangle to twist, as `a,b,c`.
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub triangle: Vec<usize>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

pub fn fixtures(a: &FixtureArgs) -> Result<Status, CliError> {
    let text = match a.name {
        FixtureName::Fig1 => {
            let f = fig1();
            format!("# F -> G\n{}# F -> H\n{}", f.f_to_g.to_text(), f.f_to_h.to_text())
        }
        FixtureName::Naive6 => {
            let (g, ids) = naive_counterexample_fixture();
            let ids: Vec<String> = ids.iter().map(u32::to_string).collect();
            format!("# ids: {}\n{}", ids.join(" "), g.to_text())
        }
        FixtureName::AppcPaths => {
            if a.n < 6 {
                return fail("appc-paths needs --n >= 6");
            }
            let (g, h) = appc_paths(a.n);
            format!("# G\n{}# H\n{}", g.to_text(), h.to_text())
        }
        FixtureName::DoubleCover => bipartite_double_cover(&a.source.load()?).to_text(),
        FixtureName::Lift => match (a.source.given(), a.triangle.as_slice()) {
            (false, []) => k4_lift().to_text(),
            (true, &[x, y, z]) => twisted_triangle_lift(&a.source.load()?, [x, y, z])?.to_text(),
            _ => return fail("lift takes both a graph and --triangle, or neither"),
        },
    };
    emit(a.out.as_deref(), &text)?;
    Ok(Status::Ok)
}
