mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "canon", version, about = "Canonical labeling of colored graphs")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a canonical labeling and the canonical form.
    Canon(CanonArgs),
    /// Decide isomorphism of two graphs.
    Iso(IsoArgs),
    /// Rigidity index with a minimum fixing set.
    Rigidity(GraphInput),
    /// Automorphism group.
    Aut(GraphInput),
    /// Orbit partition.
    Orbits(GraphInput),
    /// Queries on rotation systems.
    #[command(subcommand)]
    Embed(EmbedCommand),
    /// Generate graphs from a seeded family.
    Gen(GenArgs),
    /// Run a seeded corpus through a canonizer and report CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Cg,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Separator,
    Rigidity,
    Bf,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Separator => "separator",
            Method::Rigidity => "rigidity",
            Method::Bf => "bf",
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Input file; standard input when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "cg")]
    format: Format,
}

#[derive(Args)]
struct CanonArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum, default_value = "separator")]
    method: Method,
    /// `wl1`, `wlk:<k>` or `bf`.
    #[arg(long, default_value = "wl1")]
    invariant: String,
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Cross-check equal codes with the brute-force oracle.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct IsoArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, value_enum, default_value = "cg")]
    format: Format,
    #[arg(long, default_value = "wl1")]
    invariant: String,
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Compare whole-graph codes against the brute-force oracle.
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand)]
enum EmbedCommand {
    /// Facial walks and genus.
    Faces(RsInput),
    Genus(RsInput),
    Polyhedral(RsInput),
    /// Fixing set of size at most 3 read off the embedding.
    FixingTriple(RsInput),
    /// Fixing set from all polyhedral embeddings of the input's genus.
    FixingSet(RsInput),
}

#[derive(Args)]
struct RsInput {
    /// Rotation system in `rs` format; standard input when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// tree, path, cycle, complete, star, k_tree, partial_k_tree,
    /// random_gnp or platonic.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Edge probability in percent (random_gnp).
    #[arg(long)]
    p: Option<u32>,
    /// Edge deletion probability in percent (partial_k_tree).
    #[arg(long)]
    drop: Option<u32>,
    /// tetrahedron, cube or octahedron (platonic).
    #[arg(long)]
    solid: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of graphs, using seeds `seed, seed+1, ...`.
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, value_enum, default_value = "cg")]
    format: Format,
    /// Write `<dir>/g<seed>.cg` files and print a manifest instead.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Print the planar rotation system (platonic only).
    #[arg(long)]
    rs: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "separator")]
    method: Method,
    #[arg(long, default_value = "wl1")]
    invariant: String,
    #[arg(long, default_value_t = 3)]
    r: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(commands::EXIT_OTHER);
        }
    };
    let workers = pool.current_num_threads();
    match pool.install(|| commands::run(cli.command, workers)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
