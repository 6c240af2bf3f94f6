use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nlap", version, about = "Normalized Laplacian spectra under graph perturbations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Absolute slack on eigenvalue inequalities.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Omit the timestamp header line.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Where the main graph comes from. At most one may be given.
#[derive(Debug, Clone, Default, Args)]
#[group(multiple = false)]
pub struct GraphInput {
    /// Graph in graph6 format.
    #[arg(long)]
    pub g6: Option<String>,
    /// Edge-list file: a header `n m`, then one `u v` per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Named family `kind:n` with kind one of path, cycle, star, complete.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long)]
    pub u: Option<usize>,
    #[arg(long)]
    pub v: Option<usize>,
    /// Comma-separated neighbours of `v` to move onto `u`.
    #[arg(long)]
    pub targets: Option<String>,
    /// Comma-separated edges to subdivide, each `a-b`.
    #[arg(long)]
    pub edges: Option<String>,
    /// Comma-separated vertices of a subtree.
    #[arg(long)]
    pub subtree: Option<String>,
    /// Order of the star.
    #[arg(long)]
    pub n: Option<usize>,
    /// First graph of an identification (`kind:n` or graph6); defaults to the main input.
    #[arg(long)]
    pub g1: Option<String>,
    /// Second graph of an identification (`kind:n` or graph6).
    #[arg(long)]
    pub g2: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Subdivide,
    Identify,
    Transfer,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the normalized Laplacian.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Apply an operation and compare λ₂ and ρ before and after.
    Perturb {
        #[arg(value_enum)]
        op: Op,
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        params: Params,
    },
    /// Check one theorem on one instance.
    Check {
        /// Theorem id, e.g. T3.1.
        theorem: String,
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        params: Params,
    },
    /// Run a theorem over every small instance.
    Scan {
        theorem: String,
        #[command(flatten)]
        scan: ScanArgs,
        /// Take base graphs from a graph6 file (one per line) instead of enumerating.
        #[arg(long)]
        stream: Option<PathBuf>,
    },
    /// First instance with the given precondition state and direction.
    Witness {
        theorem: String,
        /// holds, fails, ambiguous or unconditional.
        #[arg(long)]
        pre: String,
        /// less, equal or greater.
        #[arg(long)]
        dir: String,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// The anchor table with PASS/FAIL per row.
    Reproduce {
        /// Only these criteria (1..=10); repeatable.
        #[arg(long)]
        criterion: Vec<u8>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Largest base-graph order (2..=8).
    #[arg(long, default_value_t = 6)]
    pub nmax: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, default_value_t = 2)]
    pub max_transfer: usize,
    #[arg(long, default_value_t = 2)]
    pub max_subdivide: usize,
    /// Stored witnesses per bucket.
    #[arg(long, default_value_t = 3)]
    pub witness_cap: usize,
}
