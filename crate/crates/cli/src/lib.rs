//! Command-line front end: solve, construct, verify, generate and reduce.
//!
//! Every command prints JSON carrying `"schema": 1` and, where a graph file
//! is read, the SHA-256 of its bytes. Multi-trial `construct` prints JSON
//! lines. Output depends only on inputs, flags and seeds; wall time is
//! included only with `--timing`.

mod commands;
mod error;

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub use error::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "jdom", version, about = "Minimum (1,j)-sets: exact, tree, split, randomized and reduction tools")]
pub struct Cli {
    /// Add wall-clock time to reports (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a minimum (1,j)-set or M-set.
    Solve(SolveArgs),
    /// Build (1,j)-sets by randomized resampling.
    Construct(ConstructArgs),
    /// Check a vertex set against the (1,j) condition.
    Verify(VerifyArgs),
    /// Generate a graph.
    Gen(GenArgs),
    /// Build the chordal-graph instance of an exact-cover instance.
    Reduce(ReduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Tree if the graph is a tree, else split if it is a connected split
    /// graph, else branch and bound.
    Auto,
    Brute,
    Bnb,
    Tree,
    Split,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Edge-list file.
    pub graph: PathBuf,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Per-vertex bands `v Ma Mb`; replaces `--j`.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Split partition file `K: ids` / `S: ids`.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Only look for sets of at most this size.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Lift the exact solvers' soft vertex limits.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructMethod {
    Mt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClauseOrder {
    Lowest,
    Random,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub j: usize,
    #[arg(long, value_enum, default_value_t = ConstructMethod::Mt)]
    pub method: ConstructMethod,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of independent runs; more than one prints JSON lines.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Resampling cap per run (default 1000 · n).
    #[arg(long)]
    pub max_resamples: Option<usize>,
    #[arg(long, value_enum, default_value_t = ClauseOrder::Lowest)]
    pub clause_order: ClauseOrder,
    /// Include the constructed set in single-run output.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    /// Whitespace-separated vertex ids.
    pub set: PathBuf,
    #[arg(long)]
    pub j: usize,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("family").required(true).multiple(false)))]
pub struct GenArgs {
    /// Uniform random labelled tree: N.
    #[arg(long, value_name = "N", group = "family")]
    pub tree: Option<usize>,
    /// Erdős–Rényi graph: N P.
    #[arg(long, num_args = 2, value_names = ["N", "P"], group = "family")]
    pub gnp: Option<Vec<String>>,
    /// Random regular graph: N D.
    #[arg(long, num_args = 2, value_names = ["N", "D"], group = "family")]
    pub regular: Option<Vec<String>>,
    /// Connected split graph: N1 N2 P.
    #[arg(long, num_args = 3, value_names = ["N1", "N2", "P"], group = "family")]
    pub split: Option<Vec<String>>,
    #[arg(long, value_name = "N", group = "family")]
    pub path: Option<usize>,
    #[arg(long, value_name = "N", group = "family")]
    pub cycle: Option<usize>,
    #[arg(long, value_name = "N", group = "family")]
    pub complete: Option<usize>,
    /// Star with K leaves.
    #[arg(long, value_name = "K", group = "family")]
    pub star: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the partition of a generated split graph.
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Instance file: `q t`, then t lines of three 1-based elements.
    #[arg(long)]
    pub ex3c: PathBuf,
    #[arg(long)]
    pub j: usize,
    /// Edge-list output; the role sidecar goes to `<out>.json`.
    #[arg(long)]
    pub out: PathBuf,
    /// File of 1-based triple indices forming an exact cover; writes the
    /// matching set to `<out>.witness`.
    #[arg(long, value_name = "COVERFILE")]
    pub emit_witness: Option<PathBuf>,
}

/// Runs one command, writing its report to `out`. Returns the exit code for
/// successful runs (0, or 1 when `verify` rejects the set).
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let timing = cli.timing;
    match &cli.command {
        Command::Solve(a) => commands::solve(a, timing, out),
        Command::Construct(a) => commands::construct(a, timing, out),
        Command::Verify(a) => commands::verify(a, out),
        Command::Gen(a) => commands::generate(a, out),
        Command::Reduce(a) => commands::reduce(a, out),
    }
}
