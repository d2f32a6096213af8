use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phic_core::phic::{MeasureKind, DEFAULT_LEN};

#[derive(Debug, Parser)]
#[command(
    name = "phic",
    version,
    about = "Compression-complexity measures of integrated information"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a one-symbol-per-line sequence file.
    Measure(MeasureArgs),
    /// Phi-c of one network at one state, or at every state.
    Phic(PhicArgs),
    /// State-averaged phi-c for every N-node network, compared to reference values.
    Sweep(SweepArgs),
    /// Fit the node-entropy model to a hierarchy or reference CSV.
    Regress(RegressArgs),
    /// Simulate a Hindmarsh-Rose neuron and score its spike train.
    Neuron(NeuronArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Etc,
    Lz,
}

impl From<Measure> for MeasureKind {
    fn from(m: Measure) -> Self {
        match m {
            Measure::Etc => MeasureKind::Etc,
            Measure::Lz => MeasureKind::Lz,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceMeasure {
    Etc,
    Lz,
    Entropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct Experiment {
    #[arg(long, value_enum, default_value_t = Measure::Etc)]
    pub measure: Measure,
    /// Length of every perturbation series.
    #[arg(long, default_value_t = DEFAULT_LEN)]
    pub len: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent perturbation draws averaged per state.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = SequenceMeasure::Etc)]
    pub measure: SequenceMeasure,
    /// Alphabet size; defaults to the largest symbol plus one (at least 2).
    #[arg(long)]
    pub alphabet: Option<u32>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PhicArgs {
    /// Gate labels joined by hyphens, e.g. OR-AND-XOR.
    pub network: String,
    /// Bit string such as 100, or `all` for every state plus a summary row.
    #[arg(long, default_value = "all")]
    pub state: String,
    #[command(flatten)]
    pub experiment: Experiment,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub nodes: usize,
    #[command(flatten)]
    pub experiment: Experiment,
    /// Reference CSV path or `bundled:<name>`; defaults to the bundled
    /// table for the chosen measure and node count when one exists.
    #[arg(long)]
    pub reference: Option<String>,
    #[arg(long, conflicts_with = "reference")]
    pub no_reference: bool,
    /// Exit with code 3 when the rank correlation falls below this.
    #[arg(long, default_value_t = 0.9)]
    pub min_spearman: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RegressArgs {
    /// CSV path or `bundled:<name>`, needing `network` and `mean` columns.
    pub input: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct NeuronArgs {
    /// External current I.
    #[arg(long, allow_hyphen_values = true)]
    pub current: f64,
    #[arg(long, default_value_t = 0.0021)]
    pub r: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Total simulated time, transient included.
    #[arg(long, default_value_t = 20_000.0)]
    pub duration: f64,
    #[arg(long, default_value_t = 2_000.0)]
    pub transient: f64,
    #[arg(long, default_value_t = 2.0)]
    pub window: f64,
    #[arg(long, default_value_t = -0.1, allow_hyphen_values = true)]
    pub threshold: f64,
    /// Initial state as S,P,Q.
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub init: String,
    /// Voltage samples after the transient, one per line.
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
    /// Binarized spike train, one symbol per line.
    #[arg(long)]
    pub spikes_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}
