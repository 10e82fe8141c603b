use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use coupled_tent::experiments::{
    run_autocorrelation_sweep, run_bench, run_correlation, run_cycle_check, run_density_sweep, run_seed_scan,
    AutocorrelationSweep, Bench, CorrelationRun, CycleCheck, DensitySweep, ExperimentResult, GeneratorSpec, Limits,
    SeedScan,
};
use coupled_tent::map::CouplingConfig;
use coupled_tent::presets;
use coupled_tent::sampler::{EnhancedGenerator, MixingSampler, SamplerConfig, Selector, ThresholdSampler};

use crate::args::*;
use crate::error::CliError;
use crate::table::write_csv;

type Result<T> = std::result::Result<T, CliError>;

const DEFAULT_ITERS: u64 = 1_000_000;
const BENCH_WARMUP: u64 = 1_000_000;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn dimension(g: &GeneratorArgs) -> Result<usize> {
    let implied = [g.eps_list.as_ref().map(Vec::len), g.x0.as_ref().map(Vec::len)];
    let p = g.p.or(implied[0]).or(implied[1]).unwrap_or(4);
    for (flag, n) in ["--eps-list", "--x0"].iter().zip(implied) {
        if let Some(n) = n.filter(|&n| n != p) {
            return Err(usage(format!("{flag} has {n} values but p = {p}")));
        }
    }
    Ok(p)
}

fn coupling(g: &GeneratorArgs, p: usize) -> Result<CouplingConfig<f64>> {
    let c = match &g.eps_list {
        Some(eps) => CouplingConfig::explicit(eps.clone())?,
        None => CouplingConfig::linear(p, g.eps1)?,
    };
    Ok(c.with_slope(g.a)?)
}

/// The generator described by the flags, checked by building it once.
pub fn generator(g: &GeneratorArgs) -> Result<GeneratorSpec> {
    let p = dimension(g)?;
    let x0 = match &g.x0 {
        Some(x0) => x0.clone(),
        None if p <= presets::CANONICAL_INITIAL.len() => presets::CANONICAL_INITIAL[..p].to_vec(),
        None => return Err(usage(format!("no default initial point for p = {p}; pass --x0"))),
    };
    let spec = GeneratorSpec::new(coupling(g, p)?, x0, g.transient);
    spec.build()?;
    Ok(spec)
}

/// `None` when no sampling flag is present.
pub fn sampler(s: &SamplerArgs, p: usize) -> Result<Option<SamplerConfig<f64>>> {
    let control = s.control.unwrap_or(p.saturating_sub(1));
    let cfg = match (s.threshold, &s.thresholds) {
        (Some(t), _) => SamplerConfig::Threshold(ThresholdSampler::new(s.source.unwrap_or(0), control, t)?),
        (None, Some(t)) => {
            let t: [f64; 3] = t.as_slice().try_into().map_err(|_| usage("--thresholds takes exactly three values"))?;
            let sources: [usize; 3] = match &s.sources {
                Some(v) => v.as_slice().try_into().map_err(|_| usage("--sources takes exactly three components"))?,
                None => [0, 1, 2],
            };
            SamplerConfig::Mixing(MixingSampler::new(sources, control, t)?)
        }
        (None, None) => {
            if s.source.is_some() || s.control.is_some() || s.sources.is_some() {
                return Err(usage("sampler components given without --threshold or --thresholds"));
            }
            return Ok(None);
        }
    };
    if cfg.required_dimension() > p {
        return Err(usage(format!("sampler reads a component beyond p = {p}")));
    }
    Ok(Some(cfg))
}

fn disc_list(d: &DiscArgs, default: usize) -> Result<Vec<usize>> {
    let list = match (&d.disc_list, d.disc) {
        (Some(l), _) => l.clone(),
        (None, Some(m)) => vec![m],
        (None, None) => vec![default as u64],
    };
    list.into_iter().map(|m| usize::try_from(m).map_err(|_| usage(format!("{m} boxes is too many")))).collect()
}

fn iters_list(i: &ItersArgs) -> Vec<u64> {
    match (&i.iters_list, i.iters) {
        (Some(l), _) => l.clone(),
        (None, Some(n)) => vec![n],
        (None, None) => vec![DEFAULT_ITERS],
    }
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| CliError::io(format!("cannot create {}", path.display()), e))
}

fn sink(output: &OutputArgs) -> Result<Box<dyn Write>> {
    Ok(match &output.output {
        Some(path) => Box::new(BufWriter::new(create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(out: Box<dyn Write>, result: &ExperimentResult) -> Result<()> {
    eprintln!(
        "wall time {:.3} s, {} steps ({:.3e} steps/s)",
        result.meta.wall_time.as_secs_f64(),
        result.meta.steps,
        result.meta.steps_per_second()
    );
    write_csv(out, result)
}

pub fn gen(args: &GenArgs) -> Result<()> {
    let spec = generator(&args.generator)?;
    let p = spec.dimension();
    let sampler = sampler(&args.sampler, p)?;
    if sampler.is_none() && args.component >= p {
        return Err(usage(format!("component {} out of range for p = {p}", args.component)));
    }
    eprintln!("gen: {spec} format={:?} sampler={sampler:?}", args.format);
    let mut out = sink(&args.output)?;
    let write_err = |e| CliError::io("writing output", e);
    let map = spec.build()?;
    match sampler {
        Some(s) => {
            let mut g = EnhancedGenerator::new(map, s)?;
            for _ in 0..args.iters {
                put(&mut out, args.format, g.next_sample()?.1).map_err(write_err)?;
            }
        }
        None => {
            let mut map = map;
            for _ in 0..args.iters {
                put(&mut out, args.format, map.next_state()?[args.component]).map_err(write_err)?;
            }
        }
    }
    out.flush().map_err(write_err)
}

fn put(out: &mut dyn Write, format: StreamFormat, x: f64) -> io::Result<()> {
    match format {
        StreamFormat::RawF64 => out.write_all(&x.to_le_bytes()),
        StreamFormat::Fixed32 => out.write_all(&to_fixed32(x).to_le_bytes()),
        StreamFormat::Csv => writeln!(out, "{x:.16e}"),
    }
}

/// `floor((x + 1) / 2 · 2^32)` clamped to `[0, 2^32 - 1]`.
pub fn to_fixed32(x: f64) -> u32 {
    let v = ((x + 1.0) * 0.5 * 4_294_967_296.0).floor();
    v.clamp(0.0, u32::MAX as f64) as u32
}

pub fn density(args: &DensityArgs) -> Result<()> {
    let spec = DensitySweep {
        generator: generator(&args.generator)?,
        components: args.component.clone(),
        disc: disc_list(&args.disc, 100)?,
        iters: iters_list(&args.iters),
        limits: Limits::default(),
    };
    eprintln!(
        "density: {} components={:?} disc={:?} iters={:?}",
        spec.generator, spec.components, spec.disc, spec.iters
    );
    let out = sink(&args.output)?;
    emit(out, &run_density_sweep(&spec)?)
}

pub fn corr(args: &CorrArgs) -> Result<()> {
    let spec = CorrelationRun {
        generator: generator(&args.generator)?,
        pairs: args.pair.clone(),
        disc: disc_list(&args.disc, 100)?,
        iters: iters_list(&args.iters),
        limits: Limits::default(),
    };
    eprintln!("corr: {} pairs={:?} disc={:?} iters={:?}", spec.generator, spec.pairs, spec.disc, spec.iters);
    let out = sink(&args.output)?;
    emit(out, &run_correlation(&spec)?)
}

pub fn autocorr(args: &AutocorrArgs) -> Result<()> {
    let generator = generator(&args.generator)?;
    let sampler = sampler(&args.sampler, generator.dimension())?
        .ok_or_else(|| usage("autocorr needs --threshold or --thresholds"))?;
    let spec = AutocorrelationSweep {
        generator,
        sampler,
        disc: disc_list(&args.disc, 10)?,
        iters: iters_list(&args.iters),
        limits: Limits::default(),
    };
    eprintln!("autocorr: {} sampler={:?} disc={:?} iters={:?}", spec.generator, spec.sampler, spec.disc, spec.iters);
    let out = sink(&args.output)?;
    emit(out, &run_autocorrelation_sweep(&spec)?)
}

pub fn seedscan(args: &SeedScanArgs) -> Result<()> {
    let g = &args.generator;
    if g.x0.is_some() {
        return Err(usage("seedscan builds its own initial points; use --seed-base instead of --x0"));
    }
    let p = dimension(g)?;
    let reference = |v: &[f64]| (p <= v.len()).then(|| v[..p].to_vec());
    let base = match &args.seed_base {
        Some(b) => b.clone(),
        None => {
            reference(&presets::SEED_SCAN_BASE).ok_or_else(|| usage(format!("no default --seed-base for p = {p}")))?
        }
    };
    let multipliers = match &args.seed_mults {
        Some(m) => m.clone(),
        None if p <= presets::SEED_SCAN_MULTIPLIERS.len() => presets::SEED_SCAN_MULTIPLIERS[..p].to_vec(),
        None => return Err(usage(format!("no default --seed-mults for p = {p}"))),
    };
    if base.len() != p || multipliers.len() != p {
        return Err(usage(format!("--seed-base and --seed-mults need {p} values each")));
    }
    if args.component >= p {
        return Err(usage(format!("component {} out of range for p = {p}", args.component)));
    }
    if args.seed_count == 0 {
        return Err(usage("--seed-count must be at least 1"));
    }
    let spec = SeedScan {
        config: coupling(g, p)?,
        transient: g.transient,
        base,
        stride: args.seed_stride,
        multipliers,
        count: args.seed_count,
        component: args.component,
        disc: disc_list(&args.disc, 100)?,
        iters: args.iters,
        limits: Limits::default(),
    };
    for k in [1, args.seed_count] {
        spec.generator(k).build()?;
    }
    eprintln!(
        "seedscan: {} seeds base={:?} stride={} mults={:?} disc={:?} iters={}",
        spec.count, spec.base, spec.stride, spec.multipliers, spec.disc, spec.iters
    );
    let summary_paths = args.summary.as_ref().map(|s| (s.clone(), histogram_path(s)));
    let out = sink(&args.output)?;
    let summary_files = match &summary_paths {
        Some((s, h)) => Some((create(s)?, create(h)?)),
        None => None,
    };
    let r = run_seed_scan(&spec)?;
    for row in &r.summary.rows {
        let v: Vec<f64> = row.iter().map(|c| c.as_f64()).collect();
        eprintln!("M={}: E1 min {:.7e} max {:.7e} mean {:.7e}", v[0], v[1], v[2], v[3]);
    }
    if let Some((summary, histogram)) = summary_files {
        write_csv(BufWriter::new(summary), &r.summary)?;
        write_csv(BufWriter::new(histogram), &r.histogram)?;
    }
    emit(out, &r.per_seed)
}

/// `runs/summary.csv` → `runs/summary.histogram.csv`.
pub fn histogram_path(summary: &Path) -> PathBuf {
    let stem = summary.file_stem().unwrap_or_default().to_string_lossy();
    summary.with_file_name(format!("{stem}.histogram.csv"))
}

pub fn cycle(args: &CycleArgs) -> Result<()> {
    let spec = CycleCheck { generator: generator(&args.generator)?, budget: args.iters };
    eprintln!("cycle: {} budget={}", spec.generator, spec.budget);
    let out = sink(&args.output)?;
    emit(out, &run_cycle_check(&spec)?)
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let spec = Bench { generator: generator(&args.generator)?, warmup: BENCH_WARMUP, steps: args.iters };
    if spec.steps == 0 {
        return Err(usage("--iters must be positive"));
    }
    eprintln!("bench: {} warmup={} steps={}", spec.generator, spec.warmup, spec.steps);
    let out = sink(&args.output)?;
    let r = run_bench(&spec)?;
    eprintln!("{:.3e} steps/s, {:.3e} numbers/s", r.values("steps_per_s")[0], r.values("numbers_per_s")[0]);
    emit(out, &r)
}
