use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "countable", version, about = "Polarity graphs, homomorphism counts and countability certificates")]
pub struct Cli {
    /// Write a run manifest (command line, seed, versions, file digests).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the polarity graph of PG(2, q).
    Polarity(PolarityArgs),
    /// Weighted homomorphism count of a pattern in a host.
    Hom(HomArgs),
    /// Search for or check tameness and countability certificates.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Numerical experiments.
    #[command(subcommand)]
    Harness(HarnessCommand),
    /// The bundled certificate corpus.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Render an edge list as DOT.
    Dot(DotArgs),
}

#[derive(Debug, Args)]
pub struct PolarityArgs {
    #[arg(long)]
    pub q: u32,
    /// Drop the absolute points.
    #[arg(long)]
    pub loopless: bool,
    /// Run the structural checks and print the report.
    #[arg(long)]
    pub verify: bool,
    /// Edge list output; printed when neither this nor --verify is given.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HomArgs {
    #[arg(short = 'F', long = "pattern")]
    pub pattern: PathBuf,
    #[arg(short = 'G', long = "host")]
    pub host: PathBuf,
    /// JSON object mapping pattern vertices to arrays of n weights in [0, 1].
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Scale the host to c√n·G.
    #[arg(long)]
    pub scaled: Option<f64>,
    #[arg(long)]
    pub exact: bool,
    /// Accept loops in the host edge list.
    #[arg(long)]
    pub allow_loops: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CertifyCommand {
    /// Search for a tameness derivation.
    Tame(SearchArgs),
    /// Search for a countability certificate, or a short cycle refuting one.
    Countable(SearchArgs),
    /// Check a certificate file against a graph.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(short = 'g', long = "graph")]
    pub graph: PathBuf,
    #[arg(long, default_value_t = countable::certify::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub no_axioms: bool,
    /// Write the certificate here when one is found.
    #[arg(long)]
    pub emit: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(short = 'g', long = "graph")]
    pub graph: PathBuf,
    #[arg(long)]
    pub cert: PathBuf,
    #[arg(long)]
    pub no_axioms: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum HarnessCommand {
    /// Gaps between sparse and dense weighted densities.
    Counting(CountingArgs),
    /// Spectral upper and search lower bounds on the discrepancy.
    Discrepancy(DiscrepancyArgs),
    /// The C4 and triangle constructions.
    Counterexample(CounterexampleArgs),
    /// Remove edges at high-degree vertices and check the inequalities.
    Trim(TrimArgs),
}

#[derive(Debug, Args)]
pub struct CountingArgs {
    #[arg(short = 'F', long = "pattern")]
    pub pattern: PathBuf,
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiscrepancyArgs {
    #[arg(short = 'G', long = "graph")]
    pub graph: PathBuf,
    /// Weighted host JSON `{"n": .., "values": [..]}`; the constant host by default.
    #[arg(short = 'H', long = "host")]
    pub host: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    C4,
    Triangle,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    pub which: Construction,
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Restarts of the discrepancy search for the triangle construction.
    #[arg(long, default_value_t = 50)]
    pub iters: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrimArgs {
    #[arg(short = 'G', long = "graph")]
    pub graph: PathBuf,
    #[arg(long, default_value_t = countable::harness::trim::DEFAULT_PAIRS)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the trimmed edge list here.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    /// Certify every entry and compare with the expected verdicts.
    Run(CorpusRunArgs),
    /// Write the built-in corpus with fresh certificates.
    Export(CorpusExportArgs),
}

#[derive(Debug, Args)]
pub struct CorpusRunArgs {
    #[arg(long, default_value = "corpus")]
    pub dir: PathBuf,
    #[arg(long, default_value_t = countable::certify::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CorpusExportArgs {
    #[arg(long, default_value = "corpus")]
    pub dir: PathBuf,
    #[arg(long, default_value_t = countable::certify::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct DotArgs {
    #[arg(short = 'g', long = "graph")]
    pub graph: PathBuf,
    /// Vertices to highlight.
    #[arg(long, value_delimiter = ',')]
    pub mark: Vec<usize>,
    #[arg(long)]
    pub allow_loops: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
