use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "cix",
    version,
    about = "Clique counts, intersecting checks, extremal bounds and searches for (K_r, L)-intersecting graphs"
)]
pub struct Cli {
    /// Worker threads (defaults to CIX_THREADS, then the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count K_r copies in each graph6 line.
    Count(CountArgs),
    /// Check whether the K_r copies of each graph form an L-intersecting family.
    Check(CheckArgs),
    /// Emit a named construction as graph6.
    Construct(ConstructArgs),
    /// Evaluate a bound.
    Bound(BoundArgs),
    /// Compute Ψ or Φ exactly or heuristically.
    Search(SearchArgs),
    /// Sunflower decomposition and claim report for each graph.
    Decompose(DecomposeArgs),
    /// Stability checks and edit distance to l-partiteness.
    Stability(StabilityArgs),
    /// Run the built-in regression batteries.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct InputArgs {
    /// graph6 file, one graph per line; stdin when absent or "-".
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Report malformed lines as warnings and continue.
    #[arg(long)]
    pub skip_bad: bool,
    /// Accept graphs with different vertex counts in one stream.
    #[arg(long)]
    pub allow_mixed: bool,
}

/// `--L a,b,c` or `--t t` for `{t, ..., r-1}`.
#[derive(Args, Debug, Clone, Default)]
pub struct SpecArgs {
    /// Allowed intersection sizes, comma separated (braces optional).
    #[arg(long = "L", value_name = "SET", conflicts_with = "t")]
    pub set: Option<String>,
    /// Shorthand for L = {t, ..., r-1}.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RecordFormat {
    #[default]
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GraphFormat {
    #[default]
    Graph6,
    Json,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: RecordFormat,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub r: usize,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// K_t joined with T(n-t, r-t).
    SGraph,
    /// Balanced complete multipartite graph T(n, parts).
    Turan,
    /// K_l joined with disjoint copies of K_{r-l}.
    SingleL,
    /// Triangles of an induced matching built from a progression-free set.
    RsGraph,
    Complete,
    Empty,
    Cycle,
    Petersen,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub name: Construction,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Number of parts for the Turán graph.
    #[arg(long)]
    pub parts: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: GraphFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// Product over L of (n - l)/(r - l).
    Def,
    /// C(n - t, r - t).
    Ekr,
    /// (1 - 1/(3r)) times the product over L.
    DefTuran,
    /// The two-set bound for L = {l1, l2}.
    TwoSet,
    /// The weaker closed form of the two-set bound.
    TwoSetChain,
    /// Edge-removal bound for given n, l, r and m.
    Removal,
    /// (1 + x)^r <= 1 + rx/(1 - (r - 1)x).
    Fact,
    /// Divisibility chain of the product bound.
    Chain,
    /// Clique density bound for K_{l+1}-free graphs (graph input).
    FisherRyan,
    /// Turán clique count bound for K_{l+1}-free graphs (graph input).
    Erdos,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(value_enum)]
    pub kind: BoundKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub l1: Option<usize>,
    #[arg(long)]
    pub l2: Option<usize>,
    /// Rational "p/q" (removal bound).
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Rational "p/q" (fact inequality).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Measured integer to compare against the bound.
    #[arg(long, allow_hyphen_values = true)]
    pub measured: Option<String>,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantityArg {
    Psi,
    Phi,
    /// Both, with the ratio Ψ/Φ.
    Compare,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub quantity: QuantityArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// graph6 catalog of all graphs on n vertices (Ψ beyond n = 7).
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Hill climbing instead of exhaustive search (Ψ only).
    #[arg(long)]
    pub heuristic: bool,
    /// Heuristic move budget.
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub l: usize,
    /// Degree threshold for high-degree vertices; r^2 when absent.
    #[arg(long)]
    pub threshold: Option<usize>,
    /// Try every l-subset as a core (n <= 20).
    #[arg(long)]
    pub full_scan: bool,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityMode {
    /// Core extraction and edit distance for (K_r, t)-intersecting graphs.
    Ekr,
    /// Edits versus |T(n, l)| - |E| for K_{l+1}-free graphs.
    Furedi,
    /// Edits versus the removal bound with m from the K_r count.
    FurediExt,
    /// Vertices common to all K_r copies.
    Core,
    /// Minimum edits to l-partiteness.
    Edits,
}

#[derive(Args, Debug)]
pub struct StabilityArgs {
    #[arg(value_enum)]
    pub mode: StabilityMode,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Rational "p/q".
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Local search instead of the exact edit distance (edits mode).
    #[arg(long)]
    pub heuristic: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Battery ids to run, comma separated; all when absent.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u8>>,
    #[arg(long, value_enum, default_value_t = RecordFormat::Table)]
    pub format: RecordFormat,
}
