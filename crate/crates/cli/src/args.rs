use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ctent", version, about = "Coupled tent map generators and their statistics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream one component, or a sampled stream, to a file or stdout.
    Gen(GenArgs),
    /// Density discrepancies E1 / E2² of single components.
    Density(DensityArgs),
    /// Correlation discrepancies between pairs of components.
    Corr(CorrArgs),
    /// Autocorrelation discrepancy of a sampled stream.
    Autocorr(AutocorrArgs),
    /// Density E1 / E2² over a family of initial points.
    Seedscan(SeedScanArgs),
    /// Brent cycle detection on the full state.
    Cycle(CycleArgs),
    /// Single-thread steps per second.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    /// Number of coupled maps [default: length of --eps-list or --x0, else 4].
    #[arg(long)]
    pub p: Option<usize>,

    /// Coupling unit, `eps_i = i * eps1`.
    #[arg(long, default_value_t = 1e-14)]
    pub eps1: f64,

    /// Explicit coupling constants, one per map (overrides --eps1).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub eps_list: Option<Vec<f64>>,

    /// Tent slope.
    #[arg(long, default_value_t = 2.0)]
    pub a: f64,

    /// Initial point; defaults to the reference point for p <= 4.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub x0: Option<Vec<f64>>,

    /// Steps discarded before any output.
    #[arg(long, default_value_t = 1000, value_parser = parse_count)]
    pub transient: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SamplerArgs {
    /// Single-threshold sampling: emit the source when the control is in ]T, 1[.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "thresholds")]
    pub threshold: Option<f64>,

    /// Three-band mixing thresholds T1,T2,T3.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub thresholds: Option<Vec<f64>>,

    /// Emitted component for --threshold [default: 0].
    #[arg(long, conflicts_with = "thresholds")]
    pub source: Option<usize>,

    /// Control component [default: p - 1].
    #[arg(long)]
    pub control: Option<usize>,

    /// Emitted components for the three bands [default: 0,1,2].
    #[arg(long, value_delimiter = ',', conflicts_with = "threshold")]
    pub sources: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct DiscArgs {
    /// Boxes per axis.
    #[arg(long, conflicts_with = "disc_list", value_parser = parse_count)]
    pub disc: Option<u64>,

    /// Several box counts, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = parse_count)]
    pub disc_list: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ItersArgs {
    /// Post-transient iterations.
    #[arg(long, conflicts_with = "iters_list", value_parser = parse_count)]
    pub iters: Option<u64>,

    /// Increasing checkpoints of one run, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = parse_count)]
    pub iters_list: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StreamFormat {
    /// Little-endian IEEE-754 doubles.
    RawF64,
    /// Little-endian u32, floor((x + 1) / 2 * 2^32).
    Fixed32,
    /// One value per line, 17 significant digits.
    Csv,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    /// Values to write (samples when a sampler is given).
    #[arg(long, default_value_t = 1000, value_parser = parse_count)]
    pub iters: u64,
    /// Component to stream without a sampler.
    #[arg(long, default_value_t = 0)]
    pub component: usize,
    #[arg(long, value_enum, default_value_t = StreamFormat::Csv)]
    pub format: StreamFormat,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub disc: DiscArgs,
    #[command(flatten)]
    pub iters: ItersArgs,
    /// Components to analyse, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "0")]
    pub component: Vec<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CorrArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub disc: DiscArgs,
    #[command(flatten)]
    pub iters: ItersArgs,
    /// Pair k,l with k < l; repeatable. All pairs when absent.
    #[arg(long, value_parser = parse_pair)]
    pub pair: Vec<(usize, usize)>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AutocorrArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub disc: DiscArgs,
    #[command(flatten)]
    pub iters: ItersArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SeedScanArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub disc: DiscArgs,
    /// Iterations per seed.
    #[arg(long, default_value_t = 1_000_000, value_parser = parse_count)]
    pub iters: u64,
    #[arg(long, default_value_t = 0)]
    pub component: usize,
    /// Base point of the family [default: reference base for p <= 4].
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub seed_base: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-7)]
    pub seed_stride: f64,
    /// Per-component multipliers [default: 1,7,13,17 truncated to p].
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub seed_mults: Option<Vec<u64>>,
    /// Seeds k = 1..=count.
    #[arg(long, default_value_t = 1000, value_parser = parse_count)]
    pub seed_count: u64,
    /// Also write the min/max/mean table and the E1 histogram here.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CycleArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Step budget.
    #[arg(long, default_value_t = 10_000_000, value_parser = parse_count)]
    pub iters: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Timed steps.
    #[arg(long, default_value_t = 100_000_000, value_parser = parse_count)]
    pub iters: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Non-negative integer, also accepted in exponent form (`1e7`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 {
        Ok(x as u64)
    } else {
        Err(format!("`{s}` is not a non-negative integer"))
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (k, l) = s.split_once(',').ok_or_else(|| format!("`{s}` is not a pair k,l"))?;
    let k = k.trim().parse().map_err(|_| format!("bad component `{k}`"))?;
    let l = l.trim().parse().map_err(|_| format!("bad component `{l}`"))?;
    Ok((k, l))
}
