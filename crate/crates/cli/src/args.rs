use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "acmac",
    version,
    about = "Capacity-region bounds and coding simulations for asynchronous cognitive MACs"
)]
pub struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "ACMAC_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a bundled channel in the channel file format.
    Example(ExampleArgs),
    /// Check a channel file and report its shape.
    Validate { channel: PathBuf },
    /// Inner bound with message cognition.
    Inner(RegionArgs),
    /// Outer-bound estimate with message cognition.
    Outer(OuterArgs),
    /// Inner bound with codeword cognition.
    AccmacInner(RegionArgs),
    /// Outer-bound estimate with codeword cognition.
    AccmacOuter(OuterArgs),
    /// Closed-form bounds for the sub-cooperative Gaussian channel.
    Gaussian(GaussianArgs),
    /// Evaluate the n-letter regions at one n-letter law.
    Multiletter(MultiletterArgs),
    /// Monte-Carlo error rate of the random-coding scheme.
    Simulate(SimulateArgs),
    /// Rerun the job recorded in a manifest.
    Replay {
        manifest: PathBuf,
        /// Directory for the reproduced files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExampleChannel {
    /// `y = x2 mod x1` with `x1` in {2, 4} and `x2`, `y` in {0..3}.
    Mod,
    /// `y = x1 xor x2 xor z` with `z ~ Bernoulli(p)`.
    BinaryAdditive,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(value_enum)]
    pub channel: ExampleChannel,
    /// Crossover probability of the binary additive channel.
    #[arg(long, default_value_t = 0.0)]
    pub p: f64,
    #[arg(long)]
    pub d_min: Option<usize>,
    #[arg(long)]
    pub d_max: Option<usize>,
    /// File to write; stdout otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// TOML file with search settings; flags below override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Gradient-ascent restarts.
    #[arg(long, visible_alias = "budget")]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub ascent_steps: Option<usize>,
    #[arg(long)]
    pub step_size: Option<f64>,
    #[arg(long)]
    pub n_dirs: Option<usize>,
    /// Random parameter samples evaluated before the ascent.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub no_face_seeds: bool,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    pub channel: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Output directory; without it the hull CSV goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OuterArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    /// Skip the inner search whose parameters seed the outer search.
    #[arg(long)]
    pub no_inner_seeding: bool,
}

#[derive(Debug, Args)]
pub struct GaussianArgs {
    pub p1: f64,
    pub p2: f64,
    pub n0: f64,
    #[arg(long, default_value_t = acmac_core::gaussian::DEFAULT_RHO_STEPS)]
    pub rho_steps: usize,
    #[arg(long, default_value_t = acmac_core::gaussian::DEFAULT_P2_STEPS)]
    pub p2_steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MultiletterArgs {
    pub channel: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub law: LawArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LawArgs {
    /// Both inputs uniform and independent, run for n symbols.
    #[arg(long)]
    pub iid_uniform: bool,
    /// JSON file with single-letter parameters (`p_x1`, `p_x2_given_v`).
    #[arg(long)]
    pub iid_params: Option<PathBuf>,
    /// JSON array of probabilities over `(x1^n, x2^n)`.
    #[arg(long)]
    pub joint: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Model {
    Acmac,
    Accmac,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Decoder {
    Auto,
    Exhaustive,
    Analytic,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub channel: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r1: f64,
    #[arg(long)]
    pub r2: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Typicality slack.
    #[arg(long, default_value_t = 0.3)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = Model::Acmac)]
    pub model: Model,
    /// `uniform`, or a fixed delay from the channel's delay set.
    #[arg(long, default_value = "uniform", allow_hyphen_values = true)]
    pub delay: String,
    #[arg(long, value_enum, default_value_t = Decoder::Auto)]
    pub decoder: Decoder,
    /// Largest `M1 * M2` decoded against stored codebooks under `auto`.
    #[arg(long)]
    pub exhaustive_limit: Option<u64>,
    /// JSON file with single-letter parameters; both inputs uniform and independent otherwise.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
