//! `rootline`: JSON front end for the rootline library.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rootline", version, about = "Largest-root estimation and certified lower-bound pairs")]
pub struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Estimate the largest root from (n, e_1..e_k).
    ApproxRoot(ApproxRootArgs),
    /// Construct a lower-bound pair.
    GenPair(GenPairArgs),
    /// Re-check every invariant of a pair file.
    VerifyPair(VerifyPairArgs),
    /// Girth and basic parameters of a graph.
    Girth(GraphArgs),
    /// Exhaustive search for the signing with the smallest largest eigenvalue.
    SignSearch(GraphArgs),
    /// Check that trace powers 1..k agree across all signings.
    VerifyInvariance(InvarianceArgs),
    /// Generate a seeded random KS family file.
    GenFamily(GenFamilyArgs),
    /// Round an interlacing family to a leaf.
    Round(RoundArgs),
    /// Run the acceptance experiments.
    Selftest(SelftestArgs),
    /// Run a manifest file describing one of the other subcommands.
    Run(RunArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Auto,
    PowerSum,
    ChebyshevLoop,
}

#[derive(Args, Debug)]
pub struct ApproxRootArgs {
    /// JSON profile `{"n": .., "e": ["p/q", ..]}`.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["e", "roots", "coeffs"])]
    pub profile: Option<PathBuf>,
    /// JSON polynomial `{"coeffs": ["p/q", ..]}` (constant term first); its
    /// top `k` coefficients form the profile.
    #[arg(long, value_name = "PATH", requires = "k", conflicts_with_all = ["e", "roots"])]
    pub coeffs: Option<PathBuf>,
    /// Number of roots. Taken from the profile file when omitted there.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated e_1..e_k.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "n")]
    pub e: Vec<String>,
    /// Comma-separated roots; the profile is computed from them.
    #[arg(long, value_delimiter = ',', requires = "k", conflicts_with = "e")]
    pub roots: Vec<String>,
    /// Number of statistics to use; a longer profile is truncated.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = BranchArg::Auto)]
    pub branch: BranchArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    Weak,
    Girth,
    Boosted,
    Noisy,
}

#[derive(Args, Debug)]
pub struct GenPairArgs {
    #[arg(long, value_enum)]
    pub kind: PairKind,
    /// Degree for weak pairs (and the base of boosted ones); padded degree
    /// for noisy pairs.
    #[arg(long)]
    pub n: Option<usize>,
    /// Chebyshev degree of a noisy pair.
    #[arg(long)]
    pub k: Option<usize>,
    /// Power for girth pairs, composition degree for boosted ones.
    #[arg(long)]
    pub t: Option<usize>,
    #[command(flatten)]
    pub graph: OptionalGraph,
}

#[derive(Args, Debug)]
pub struct VerifyPairArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct OptionalGraph {
    /// Catalog name such as `heawood`, `Q_3`, `C_8` or `K_3,3`.
    #[arg(long, conflicts_with = "graph_file")]
    pub graph: Option<String>,
    /// JSON graph `{"n": .., "edges": [[u, v], ..]}`.
    #[arg(long, value_name = "PATH")]
    pub graph_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[command(flatten)]
    pub graph: OptionalGraph,
}

#[derive(Args, Debug)]
pub struct InvarianceArgs {
    #[command(flatten)]
    pub graph: OptionalGraph,
    /// Highest trace power to compare; defaults to the girth.
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated diagonal entries; defaults to zero.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub diagonal: Vec<String>,
    /// Check this many random signings instead of all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct GenFamilyArgs {
    /// Number of levels.
    #[arg(long)]
    pub m: usize,
    /// Vector dimension.
    #[arg(long)]
    pub n: usize,
    /// Largest support size per level.
    #[arg(long, default_value_t = 3)]
    pub support: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct RoundArgs {
    /// Family file: `{"kind": "ks", ...}` or `{"kind": "sr", ...}`.
    #[arg(long, value_name = "PATH")]
    pub family: PathBuf,
    #[arg(long, default_value = "1/2")]
    pub epsilon: String,
    /// Also enumerate every leaf.
    #[arg(long)]
    pub exhaustive_check: bool,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Run only these criteria (repeatable); all of them by default.
    #[arg(long)]
    pub criterion: Vec<usize>,
    #[arg(long, default_value_t = rootline::selftest::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long, value_name = "PATH")]
    pub manifest: PathBuf,
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("ROOTLINE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    let cli = Cli::parse();
    commands::execute(cli)
}
