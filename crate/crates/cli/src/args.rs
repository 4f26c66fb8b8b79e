use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Exact partial domination in prisms of graphs.
#[derive(Debug, Parser, Serialize)]
#[command(name = "prismdom", version)]
pub struct Cli {
    /// Vertex labels run 1..=n in files, permutations and printed sets.
    #[arg(long, global = true)]
    pub one_indexed: bool,

    /// Emit structured JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for permutation sweeps (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Largest n for exhaustive permutation enumeration.
    #[arg(long, global = true, env = "PRISMDOM_CAP", default_value_t = 8)]
    pub cap: usize,

    /// Largest n accepted by the brute-force oracle.
    #[arg(long, global = true, default_value_t = 16)]
    pub oracle_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file (default: standard output).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Domination number, or p-domination number with -p.
    Gamma {
        graph: PathBuf,
        #[arg(short)]
        p: Option<String>,
        /// Cross-check the result with the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Maximum coverage c[k] of k-sets, one `k c[k]` line per k.
    Profile { graph: PathBuf },
    /// Build the prism of a graph under a permutation.
    Prism {
        graph: PathBuf,
        /// `identity`, cycle notation like "(2 3 4)", an image line, or a file holding one.
        #[arg(long, default_value = "identity")]
        pi: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Evaluate γ_p(πG) over permutations and classify the graph.
    Sweep {
        graph: PathBuf,
        #[arg(short)]
        p: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Machine-check one of the statements on an instance.
    Verify(VerifyArgs),
    /// Build the set T for a paired maximum-degree set M and audit it.
    FindT {
        graph: PathBuf,
        /// Members of M, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        #[arg(long, default_value = "identity")]
        pi: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Path,
    Cycle,
    Complete,
    Star,
    Random,
}

#[derive(Debug, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Edge probability `a/b` for random graphs.
    #[arg(long)]
    pub density: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct ModeArgs {
    /// Evaluate every permutation.
    #[arg(long, alias = "all-pi", conflicts_with = "sample")]
    pub all: bool,
    /// Evaluate this many seeded random permutations (identity first).
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Claim id: 1-7, remark, or gu.
    #[arg(long)]
    pub prop: String,
    /// Graph file; alternatively generate one with --family/--n.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, requires = "n")]
    pub family: Option<FamilyKind>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed for random graphs (default: --seed)
    #[arg(long)]
    pub graph_seed: Option<u64>,
    #[arg(long)]
    pub density: Option<String>,
    /// Check a single permutation instead of a sweep.
    #[arg(long, conflicts_with_all = ["all_pi", "sample"])]
    pub pi: Option<String>,
    /// Check every permutation.
    #[arg(long, conflicts_with = "sample")]
    pub all_pi: bool,
    /// Check this many seeded random permutations.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Seed for sampled permutations, and for random graphs unless --graph-seed is set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vertex set M for the independent-set statements, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    /// Proportions to test for the sandwich (default: every breakpoint).
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<String>,
}
