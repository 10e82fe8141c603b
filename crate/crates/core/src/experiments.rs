//! Experiment drivers: density sweeps, cross-correlation, autocorrelation of
//! sampled streams, seed scans, cycle detection and throughput.
//!
//! Every driver makes a single pass over the generator and reports at
//! checkpoints; counts are cumulative, so the row for `N` is exactly what an
//! independent run of length `N` would give.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::analysis::{
    correlation, density, Discrepancy, HistogramAccumulator1D, HistogramAccumulator2D, PairAccumulator, Partition1D,
    Partition2D,
};
use crate::error::{Error, Result};
use crate::map::{CoupledTentMap, CouplingConfig, StateVector};
use crate::presets;
use crate::sampler::{EnhancedGenerator, SamplerConfig, Selector};

/// Cap on the total number of histogram counters one experiment may allocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_counters: u64,
}

impl Default for Limits {
    /// 2^27 counters, 1 GiB of `u64`.
    fn default() -> Self {
        Limits { max_counters: 1 << 27 }
    }
}

impl Limits {
    fn check(&self, needed: u64) -> Result<()> {
        if needed > self.max_counters {
            return Err(Error::ResourceGuard { needed, budget: self.max_counters });
        }
        Ok(())
    }
}

/// Coupling, starting point and transient of one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub config: CouplingConfig<f64>,
    pub initial: Vec<f64>,
    pub transient: u64,
}

impl GeneratorSpec {
    pub fn new(config: CouplingConfig<f64>, initial: Vec<f64>, transient: u64) -> Self {
        GeneratorSpec { config, initial, transient }
    }

    /// `p` maps, `ε_i = i·1e-14`, started from the density-run initial point.
    pub fn density_reference(p: usize) -> Result<Self> {
        Self::reference(p, &presets::DENSITY_INITIAL)
    }

    /// `p` maps, `ε_i = i·1e-14`, started from the correlation/sampling initial point.
    pub fn canonical(p: usize) -> Result<Self> {
        Self::reference(p, &presets::CANONICAL_INITIAL)
    }

    fn reference(p: usize, initial: &[f64]) -> Result<Self> {
        if p > initial.len() {
            return Err(Error::InvalidExperiment(format!("no reference initial point for p = {p}")));
        }
        Ok(GeneratorSpec {
            config: CouplingConfig::linear(p, presets::EPS1)?,
            initial: initial[..p].to_vec(),
            transient: presets::DEFAULT_TRANSIENT,
        })
    }

    pub fn dimension(&self) -> usize {
        self.config.dimension()
    }

    pub fn build(&self) -> Result<CoupledTentMap<f64>> {
        let x0 = StateVector::new(self.initial.clone())?;
        Ok(CoupledTentMap::new(self.config.clone(), x0)?.with_transient(self.transient))
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} a={} eps={:?} x0={:?} transient={}",
            self.config.dimension(),
            self.config.slope(),
            self.config.eps(),
            self.initial,
            self.transient
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
}

impl Cell {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Cell::Int(v) => v as f64,
            Cell::Real(v) => v,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        match *self {
            Cell::Int(v) => Some(v),
            Cell::Real(_) => None,
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunMetadata {
    pub wall_time: Duration,
    /// Generator steps taken, transients included.
    pub steps: u64,
    pub config: String,
}

impl RunMetadata {
    pub fn steps_per_second(&self) -> f64 {
        self.steps as f64 / self.wall_time.as_secs_f64()
    }
}

/// A table of measurements, one row per parameter combination.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: RunMetadata,
}

impl ExperimentResult {
    fn new(columns: &[&str]) -> Self {
        ExperimentResult {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: RunMetadata::default(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of column `name`, in row order.
    pub fn values(&self, name: &str) -> Vec<f64> {
        match self.column(name) {
            Some(j) => self.rows.iter().map(|r| r[j].as_f64()).collect(),
            None => Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn check_checkpoints(iters: &[u64]) -> Result<()> {
    if iters.is_empty() {
        return Err(Error::InvalidExperiment("empty iteration list".into()));
    }
    if iters.windows(2).any(|w| w[0] >= w[1]) || iters[0] == 0 {
        return Err(Error::InvalidExperiment(format!("iteration list {iters:?} is not strictly increasing from 1")));
    }
    Ok(())
}

fn check_components(p: usize, components: &[usize]) -> Result<()> {
    match components.iter().find(|&&c| c >= p) {
        Some(c) => Err(Error::InvalidExperiment(format!("component {c} out of range for p = {p}"))),
        None => Ok(()),
    }
}

fn finish(mut result: ExperimentResult, started: Instant, steps: u64, config: String) -> ExperimentResult {
    result.meta = RunMetadata { wall_time: started.elapsed(), steps, config };
    result
}

/// Marginal density of selected components against the uniform law.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySweep {
    pub generator: GeneratorSpec,
    pub components: Vec<usize>,
    pub disc: Vec<usize>,
    pub iters: Vec<u64>,
    pub limits: Limits,
}

/// Rows `(n_iter, n_disc, component, e1, e2_sq)`.
pub fn run_density_sweep(spec: &DensitySweep) -> Result<ExperimentResult> {
    check_checkpoints(&spec.iters)?;
    check_components(spec.generator.dimension(), &spec.components)?;
    let partitions = spec.disc.iter().map(|&m| Partition1D::new(m)).collect::<Result<Vec<_>>>()?;
    spec.limits.check(spec.components.len() as u64 * spec.disc.iter().map(|&m| m as u64).sum::<u64>())?;

    let mut accs: Vec<(usize, HistogramAccumulator1D)> = spec
        .components
        .iter()
        .flat_map(|&c| partitions.iter().map(move |&p| (c, HistogramAccumulator1D::new(p))))
        .collect();
    let mut result = ExperimentResult::new(&["n_iter", "n_disc", "component", "e1", "e2_sq"]);
    let started = Instant::now();
    let mut map = spec.generator.build()?;
    map.skip_transient()?;
    let mut done = 0;
    for &n in &spec.iters {
        map.run(n - done, |x| accs.iter_mut().try_for_each(|(c, acc)| acc.tally(x[*c])))?;
        done = n;
        for (c, acc) in &accs {
            let d = density(acc)?;
            result.push(vec![
                n.into(),
                acc.partition().boxes().into(),
                (*c).into(),
                d.l1().into(),
                d.l2_squared().into(),
            ]);
        }
    }
    Ok(finish(result, started, map.steps(), spec.generator.to_string()))
}

/// Pairwise correlation between components.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRun {
    pub generator: GeneratorSpec,
    /// Component pairs `(k, l)`; empty means every `k < l`.
    pub pairs: Vec<(usize, usize)>,
    pub disc: Vec<usize>,
    pub iters: Vec<u64>,
    pub limits: Limits,
}

/// Rows `(n_iter, n_disc, k, l, ec1, ec2_sq)`.
pub fn run_correlation(spec: &CorrelationRun) -> Result<ExperimentResult> {
    check_checkpoints(&spec.iters)?;
    let p = spec.generator.dimension();
    let pairs: Vec<(usize, usize)> = if spec.pairs.is_empty() {
        (0..p).flat_map(|k| (k + 1..p).map(move |l| (k, l))).collect()
    } else {
        spec.pairs.clone()
    };
    if pairs.is_empty() {
        return Err(Error::InvalidExperiment("correlation needs at least two components".into()));
    }
    for &(k, l) in &pairs {
        check_components(p, &[k, l])?;
        if k >= l {
            return Err(Error::InvalidExperiment(format!("pair ({k}, {l}) must have k < l")));
        }
    }
    let partitions = spec.disc.iter().map(|&m| Partition2D::new(m)).collect::<Result<Vec<_>>>()?;
    spec.limits.check(pairs.len() as u64 * spec.disc.iter().map(|&m| (m * m) as u64).sum::<u64>())?;

    let mut accs: Vec<((usize, usize), HistogramAccumulator2D)> = pairs
        .iter()
        .flat_map(|&kl| partitions.iter().map(move |&part| (kl, HistogramAccumulator2D::new(part))))
        .collect();
    let mut result = ExperimentResult::new(&["n_iter", "n_disc", "k", "l", "ec1", "ec2_sq"]);
    let started = Instant::now();
    let mut map = spec.generator.build()?;
    map.skip_transient()?;
    let mut done = 0;
    for &n in &spec.iters {
        map.run(n - done, |x| accs.iter_mut().try_for_each(|((k, l), acc)| acc.tally(x[*k], x[*l])))?;
        done = n;
        for ((k, l), acc) in &accs {
            let c = correlation(acc)?;
            result.push(vec![
                n.into(),
                acc.partition().boxes_per_axis().into(),
                (*k).into(),
                (*l).into(),
                c.l1().into(),
                c.l2_squared().into(),
            ]);
        }
    }
    Ok(finish(result, started, map.steps(), spec.generator.to_string()))
}

/// Autocorrelation of a chaotically sampled stream.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrelationSweep {
    pub generator: GeneratorSpec,
    pub sampler: SamplerConfig<f64>,
    pub disc: Vec<usize>,
    /// Checkpoints in raw (post-transient) generator steps.
    pub iters: Vec<u64>,
    pub limits: Limits,
}

/// Rows `(n_iter, n_sampl, n_disc, e_ac1, e_ac2_sq)`; the discrepancies are
/// NaN while fewer than two samples exist.
pub fn run_autocorrelation_sweep(spec: &AutocorrelationSweep) -> Result<ExperimentResult> {
    check_checkpoints(&spec.iters)?;
    if spec.sampler.required_dimension() > spec.generator.dimension() {
        return Err(Error::InvalidExperiment("sampler reads components beyond p".into()));
    }
    let partitions = spec.disc.iter().map(|&m| Partition2D::new(m)).collect::<Result<Vec<_>>>()?;
    spec.limits.check(spec.disc.iter().map(|&m| (m * m) as u64).sum())?;

    let mut accs: Vec<PairAccumulator> = partitions.into_iter().map(PairAccumulator::new).collect();
    let mut result = ExperimentResult::new(&["n_iter", "n_sampl", "n_disc", "e_ac1", "e_ac2_sq"]);
    let started = Instant::now();
    let mut gen = EnhancedGenerator::new(spec.generator.build()?, spec.sampler)?;
    let mut sampled = 0u64;
    let mut done = 0u64;
    for &n in &spec.iters {
        // the first call also burns the transient
        let budget = n - done + if done == 0 { spec.generator.transient } else { 0 };
        sampled += gen.run(budget, |v| accs.iter_mut().try_for_each(|acc| acc.push(v)))?;
        done = n;
        for acc in &accs {
            let m = acc.histogram().partition().boxes_per_axis();
            let (l1, l2) = match acc.estimate() {
                Ok(c) => (c.l1(), c.l2_squared()),
                Err(_) => (f64::NAN, f64::NAN),
            };
            result.push(vec![n.into(), sampled.into(), m.into(), l1.into(), l2.into()]);
        }
    }
    let steps = gen.map().steps();
    Ok(finish(result, started, steps, format!("{} sampler={:?}", spec.generator, spec.sampler)))
}

/// Density errors over the seed family `x^j_{0,k} = base_j + stride·mult_j·k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedScan {
    pub config: CouplingConfig<f64>,
    pub transient: u64,
    pub base: Vec<f64>,
    pub stride: f64,
    pub multipliers: Vec<u64>,
    /// Seeds `k = 1..=count`.
    pub count: u64,
    pub component: usize,
    pub disc: Vec<usize>,
    pub iters: u64,
    pub limits: Limits,
}

impl SeedScan {
    /// The reference 4-map family with `p` maps.
    pub fn reference(p: usize, count: u64, disc: Vec<usize>, iters: u64) -> Result<Self> {
        if p > presets::SEED_SCAN_BASE.len() {
            return Err(Error::InvalidExperiment(format!("no reference seed family for p = {p}")));
        }
        Ok(SeedScan {
            config: CouplingConfig::linear(p, presets::EPS1)?,
            transient: presets::DEFAULT_TRANSIENT,
            base: presets::SEED_SCAN_BASE[..p].to_vec(),
            stride: presets::SEED_SCAN_STRIDE,
            multipliers: presets::SEED_SCAN_MULTIPLIERS[..p].to_vec(),
            count,
            component: 0,
            disc,
            iters,
            limits: Limits::default(),
        })
    }

    pub fn initial(&self, k: u64) -> Vec<f64> {
        self.base.iter().zip(&self.multipliers).map(|(&b, &mult)| b + self.stride * (mult * k) as f64).collect()
    }

    pub fn generator(&self, k: u64) -> GeneratorSpec {
        GeneratorSpec::new(self.config.clone(), self.initial(k), self.transient)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedScanResult {
    /// Rows `(k, n_disc, e1, e2_sq)`.
    pub per_seed: ExperimentResult,
    /// Rows `(n_disc, e1_min, e1_max, e1_mean, e2_sq_min, e2_sq_max, e2_sq_mean)`.
    pub summary: ExperimentResult,
    /// Rows `(n_disc, bin_lo, bin_hi, count)`: E1 histogram over `[min, max]`.
    pub histogram: ExperimentResult,
}

const SEED_HISTOGRAM_BINS: usize = 20;

/// Runs every seed independently (in parallel) and summarizes.
pub fn run_seed_scan(spec: &SeedScan) -> Result<SeedScanResult> {
    let p = spec.config.dimension();
    if spec.count == 0 {
        return Err(Error::InvalidExperiment("seed count must be at least 1".into()));
    }
    if spec.base.len() != p || spec.multipliers.len() != p {
        return Err(Error::InvalidExperiment(format!(
            "seed family has {} bases and {} multipliers for p = {p}",
            spec.base.len(),
            spec.multipliers.len()
        )));
    }
    check_components(p, &[spec.component])?;
    let partitions = spec.disc.iter().map(|&m| Partition1D::new(m)).collect::<Result<Vec<_>>>()?;
    let per_thread: u64 = spec.disc.iter().map(|&m| m as u64).sum();
    spec.limits.check(per_thread * rayon::current_num_threads() as u64)?;

    let started = Instant::now();
    let seeds: Vec<Vec<(f64, f64)>> = (1..=spec.count)
        .into_par_iter()
        .map(|k| {
            let mut map = spec.generator(k).build()?;
            let mut accs: Vec<_> = partitions.iter().map(|&part| HistogramAccumulator1D::new(part)).collect();
            map.skip_transient()?;
            map.run(spec.iters, |x| accs.iter_mut().try_for_each(|acc| acc.tally(x[spec.component])))?;
            accs.iter().map(|acc| density(acc).map(|d| (d.l1(), d.l2_squared()))).collect()
        })
        .collect::<Result<_>>()?;

    let mut per_seed = ExperimentResult::new(&["k", "n_disc", "e1", "e2_sq"]);
    for (k, errs) in (1..=spec.count).zip(&seeds) {
        for (&m, &(e1, e2)) in spec.disc.iter().zip(errs) {
            per_seed.push(vec![k.into(), m.into(), e1.into(), e2.into()]);
        }
    }
    let mut summary =
        ExperimentResult::new(&["n_disc", "e1_min", "e1_max", "e1_mean", "e2_sq_min", "e2_sq_max", "e2_sq_mean"]);
    let mut histogram = ExperimentResult::new(&["n_disc", "bin_lo", "bin_hi", "count"]);
    for (j, &m) in spec.disc.iter().enumerate() {
        let e1: Vec<f64> = seeds.iter().map(|s| s[j].0).collect();
        let e2: Vec<f64> = seeds.iter().map(|s| s[j].1).collect();
        let (lo, hi, mean) = min_max_mean(&e1);
        let (lo2, hi2, mean2) = min_max_mean(&e2);
        summary.push(vec![m.into(), lo.into(), hi.into(), mean.into(), lo2.into(), hi2.into(), mean2.into()]);

        let width = (hi - lo) / SEED_HISTOGRAM_BINS as f64;
        let mut bins = [0u64; SEED_HISTOGRAM_BINS];
        for &v in &e1 {
            let b = if width > 0.0 { ((v - lo) / width) as usize } else { 0 };
            bins[b.min(SEED_HISTOGRAM_BINS - 1)] += 1;
        }
        for (b, &count) in bins.iter().enumerate() {
            let b_lo = lo + width * b as f64;
            histogram.push(vec![m.into(), b_lo.into(), (b_lo + width).into(), count.into()]);
        }
    }
    let steps = spec.count * (spec.transient + spec.iters);
    let config = format!(
        "p={p} eps={:?} base={:?} stride={} multipliers={:?} seeds=1..={} component={} iters={}",
        spec.config.eps(),
        spec.base,
        spec.stride,
        spec.multipliers,
        spec.count,
        spec.component,
        spec.iters
    );
    let per_seed = finish(per_seed, started, steps, config);
    summary.meta = per_seed.meta.clone();
    histogram.meta = per_seed.meta.clone();
    Ok(SeedScanResult { per_seed, summary, histogram })
}

fn min_max_mean(v: &[f64]) -> (f64, f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi, v.iter().sum::<f64>() / v.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleOutcome {
    /// The orbit enters a cycle of length `period` after `tail` steps.
    Found { tail: u64, period: u64 },
    /// No repeat among the first `steps` iterates.
    NotFound { steps: u64 },
}

/// Brent's cycle detection on the orbit of `start` under the in-place map
/// `advance`, giving up after `budget` evaluations in the period search.
pub fn brent<S, F, E>(start: &S, mut advance: F, same: E, budget: u64) -> Result<CycleOutcome>
where
    S: Clone,
    F: FnMut(&mut S) -> Result<()>,
    E: Fn(&S, &S) -> bool,
{
    let mut power = 1u64;
    let mut period = 1u64;
    let mut tortoise = start.clone();
    let mut hare = start.clone();
    advance(&mut hare)?;
    let mut evaluations = 1u64;
    while !same(&tortoise, &hare) {
        if evaluations >= budget {
            return Ok(CycleOutcome::NotFound { steps: evaluations });
        }
        if power == period {
            tortoise = hare.clone();
            power *= 2;
            period = 0;
        }
        advance(&mut hare)?;
        evaluations += 1;
        period += 1;
    }

    let mut tortoise = start.clone();
    let mut hare = start.clone();
    for _ in 0..period {
        advance(&mut hare)?;
    }
    let mut tail = 0u64;
    while !same(&tortoise, &hare) {
        advance(&mut tortoise)?;
        advance(&mut hare)?;
        tail += 1;
    }
    Ok(CycleOutcome::Found { tail, period })
}

/// Searches the full state orbit from the initial point (the transient is
/// not skipped) for a bitwise repeat.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleCheck {
    pub generator: GeneratorSpec,
    pub budget: u64,
}

pub fn check_cycle(spec: &CycleCheck) -> Result<CycleOutcome> {
    let map = spec.generator.build()?.with_transient(0);
    let same = |a: &CoupledTentMap<f64>, b: &CoupledTentMap<f64>| {
        a.current().iter().zip(b.current()).all(|(x, y)| x.to_bits() == y.to_bits())
    };
    brent(&map, |m| m.step().map(|_| ()), same, spec.budget)
}

/// Row `(found, tail, cycle, steps)`; `tail = cycle = 0` when nothing was found.
pub fn run_cycle_check(spec: &CycleCheck) -> Result<ExperimentResult> {
    let started = Instant::now();
    let outcome = check_cycle(spec)?;
    let mut result = ExperimentResult::new(&["found", "tail", "cycle", "steps"]);
    let (row, steps) = match outcome {
        CycleOutcome::Found { tail, period } => (vec![1u64, tail, period, tail + period], tail + period),
        CycleOutcome::NotFound { steps } => (vec![0, 0, 0, steps], steps),
    };
    result.push(row.into_iter().map(Cell::Int).collect());
    Ok(finish(result, started, steps, format!("{} budget={}", spec.generator, spec.budget)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bench {
    pub generator: GeneratorSpec,
    pub warmup: u64,
    pub steps: u64,
}

impl Bench {
    pub fn reference(steps: u64) -> Result<Self> {
        Ok(Bench { generator: GeneratorSpec::canonical(4)?, warmup: 1_000_000, steps })
    }
}

/// Row `(p, steps, seconds, steps_per_s, numbers_per_s)`; one step yields `p` numbers.
pub fn run_bench(spec: &Bench) -> Result<ExperimentResult> {
    let mut map = spec.generator.build()?.with_transient(0);
    for _ in 0..spec.warmup {
        map.step()?;
    }
    let started = Instant::now();
    for _ in 0..spec.steps {
        std::hint::black_box(map.step()?);
    }
    let elapsed = started.elapsed();
    let secs = elapsed.as_secs_f64();
    let p = spec.generator.dimension();
    let rate = spec.steps as f64 / secs;
    let mut result = ExperimentResult::new(&["p", "steps", "seconds", "steps_per_s", "numbers_per_s"]);
    result.push(vec![p.into(), spec.steps.into(), secs.into(), rate.into(), (rate * p as f64).into()]);
    result.meta = RunMetadata { wall_time: elapsed, steps: spec.steps, config: spec.generator.to_string() };
    Ok(result)
}

/// Any experiment, for callers that pick one at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentSpec {
    DensitySweep(DensitySweep),
    Correlation(CorrelationRun),
    AutocorrelationSweep(AutocorrelationSweep),
    SeedScan(SeedScan),
    CycleCheck(CycleCheck),
    Bench(Bench),
}

impl ExperimentSpec {
    /// Runs the experiment; a seed scan returns its per-seed table.
    pub fn run(&self) -> Result<ExperimentResult> {
        match self {
            ExperimentSpec::DensitySweep(s) => run_density_sweep(s),
            ExperimentSpec::Correlation(s) => run_correlation(s),
            ExperimentSpec::AutocorrelationSweep(s) => run_autocorrelation_sweep(s),
            ExperimentSpec::SeedScan(s) => run_seed_scan(s).map(|r| r.per_seed),
            ExperimentSpec::CycleCheck(s) => run_cycle_check(s),
            ExperimentSpec::Bench(s) => run_bench(s),
        }
    }
}
