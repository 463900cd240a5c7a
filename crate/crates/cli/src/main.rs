//! `bicover`: generate graph families, measure covers and networks, and
//! check the set cover inequality chain from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bicover_core::biclique::DEFAULT_GUARD;
use bicover_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bicover", version, about = "Biclique covers, rectifier networks and set cover bounds")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for random families and sampling.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Budget for biclique and subset enumeration.
    #[arg(long, default_value_t = DEFAULT_GUARD, global = true)]
    pub guard_subsets: u64,
    /// Largest edge count for exact cover and network computations.
    #[arg(long, default_value_t = 24, global = true)]
    pub guard_edges: usize,
    /// Fail instead of skipping exact quantities that exceed a guard.
    #[arg(long, global = true, conflicts_with = "greedy_only")]
    pub exact: bool,
    /// Skip every exact optimization and report greedy covers only.
    #[arg(long, global = true)]
    pub greedy_only: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Table,
}

/// A graph read from a JSON file (`-` for stdin) or generated by name.
#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// Graph JSON file, or `-` for stdin.
    pub graph: Option<PathBuf>,
    /// Family name instead of a file, e.g. `orthogonal:4`.
    #[arg(long, conflicts_with = "graph")]
    pub family: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph family: orthogonal:d, circulant:n, matching:n,
    /// random:na,nb,p[,seed] or sample.
    Gen { family: String },
    /// Compute kappa, lower bounds, covers, eta* and LP values of a graph.
    Measure(GraphInput),
    /// Check eta* <= LP <= OPT <= greedy <= H_n eta* on a set cover
    /// instance.
    Chain {
        /// Instance JSON file, or `-` for stdin.
        instance: Option<PathBuf>,
        /// Use the biclique instance of a graph family instead.
        #[arg(long, conflicts_with = "instance")]
        family: Option<String>,
    },
    /// Build automata for a two-letter language (or graph) from a cover
    /// and from networks, and compare their languages.
    Bridge {
        /// Language or graph JSON file, or `-` for stdin.
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        family: Option<String>,
    },
    /// Exponent report for a graph with a given network and cover.
    Report {
        graph: PathBuf,
        network: PathBuf,
        cover: PathBuf,
    },
    /// Sizes of the layered networks and midpoint covers for the
    /// orthogonality graphs with d = 2, 4, ..., DMAX.
    Blowup { dmax: usize },
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 1,
            CliError::Usage(_) => 2,
            CliError::Core(Error::ResourceLimit { .. }) => 3,
            CliError::Core(Error::TheoremViolation(_)) => 4,
            CliError::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = &cli.opts;
    let result = match cli.command {
        Command::Gen { family } => commands::gen(o, &family),
        Command::Measure(input) => commands::measure(o, &input),
        Command::Chain { instance, family } => commands::chain(o, instance.as_deref(), family.as_deref()),
        Command::Bridge { input, family } => commands::bridge(o, input.as_deref(), family.as_deref()),
        Command::Report { graph, network, cover } => commands::report(o, &graph, &network, &cover),
        Command::Blowup { dmax } => commands::blowup(o, dmax),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
