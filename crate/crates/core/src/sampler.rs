//! Chaotic sampling of the generator output.
//!
//! One component (the control) decides when another component (the source)
//! is emitted. Because consecutive emissions are separated by an irregular
//! number of steps, the emitted sequence no longer lies on the graph of the
//! tent map in the `(x̄_k, x̄_{k+1})` plane.

use crate::error::{Error, Result};
use crate::map::CoupledTentMap;
use crate::scalar::Scalar;

/// Decides, from one state vector, whether and what to emit.
pub trait Selector<T> {
    fn select(&self, x: &[T]) -> Option<T>;

    /// Smallest state dimension the selector can read.
    fn required_dimension(&self) -> usize;
}

/// Emits `x[source]` whenever `x[control] ∈ ]T, 1[`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSampler<T> {
    source: usize,
    control: usize,
    threshold: T,
}

impl<T: Scalar> ThresholdSampler<T> {
    pub fn new(source: usize, control: usize, threshold: T) -> Result<Self> {
        if source == control {
            return Err(Error::InvalidSampler(format!("source and control are both component {source}")));
        }
        if !(threshold > -T::one() && threshold < T::one()) {
            return Err(Error::InvalidSampler(format!("threshold {threshold} outside ]-1, 1[")));
        }
        Ok(ThresholdSampler { source, control, threshold })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn control(&self) -> usize {
        self.control
    }

    pub fn threshold(&self) -> T {
        self.threshold
    }
}

impl<T: Scalar> Selector<T> for ThresholdSampler<T> {
    #[inline]
    fn select(&self, x: &[T]) -> Option<T> {
        let c = x[self.control];
        (c > self.threshold && c < T::one()).then(|| x[self.source])
    }

    fn required_dimension(&self) -> usize {
        self.source.max(self.control) + 1
    }
}

/// Routes the control band to one of three sources:
///
/// | control in    | emits        |
/// |---------------|--------------|
/// | `]T1, T2[`    | `x[sources[0]]` |
/// | `[T2, T3[`    | `x[sources[1]]` |
/// | `[T3, 1[`     | `x[sources[2]]` |
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingSampler<T> {
    sources: [usize; 3],
    control: usize,
    thresholds: [T; 3],
}

impl<T: Scalar> MixingSampler<T> {
    pub fn new(sources: [usize; 3], control: usize, thresholds: [T; 3]) -> Result<Self> {
        let ids = [sources[0], sources[1], sources[2], control];
        for i in 0..4 {
            for j in i + 1..4 {
                if ids[i] == ids[j] {
                    return Err(Error::InvalidSampler(format!("component {} used twice", ids[i])));
                }
            }
        }
        let [t1, t2, t3] = thresholds;
        if !(-T::one() < t1 && t1 < t2 && t2 < t3 && t3 < T::one()) {
            return Err(Error::InvalidSampler(format!(
                "thresholds must satisfy -1 < T1 < T2 < T3 < 1, got ({t1}, {t2}, {t3})"
            )));
        }
        Ok(MixingSampler { sources, control, thresholds })
    }

    pub fn sources(&self) -> [usize; 3] {
        self.sources
    }

    pub fn control(&self) -> usize {
        self.control
    }

    pub fn thresholds(&self) -> [T; 3] {
        self.thresholds
    }

    /// Which band (0, 1, 2) the control value falls in, if any.
    #[inline]
    pub fn band(&self, c: T) -> Option<usize> {
        let [t1, t2, t3] = self.thresholds;
        if c > t1 && c < t2 {
            Some(0)
        } else if c >= t2 && c < t3 {
            Some(1)
        } else if c >= t3 && c < T::one() {
            Some(2)
        } else {
            None
        }
    }
}

impl<T: Scalar> Selector<T> for MixingSampler<T> {
    #[inline]
    fn select(&self, x: &[T]) -> Option<T> {
        self.band(x[self.control]).map(|b| x[self.sources[b]])
    }

    fn required_dimension(&self) -> usize {
        self.sources.iter().copied().fold(self.control, usize::max) + 1
    }
}

/// Either sampling rule, chosen at runtime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplerConfig<T> {
    Threshold(ThresholdSampler<T>),
    Mixing(MixingSampler<T>),
}

impl<T: Scalar> Selector<T> for SamplerConfig<T> {
    #[inline]
    fn select(&self, x: &[T]) -> Option<T> {
        match self {
            SamplerConfig::Threshold(s) => s.select(x),
            SamplerConfig::Mixing(s) => s.select(x),
        }
    }

    fn required_dimension(&self) -> usize {
        match self {
            SamplerConfig::Threshold(s) => s.required_dimension(),
            SamplerConfig::Mixing(s) => s.required_dimension(),
        }
    }
}

/// Sampled values together with the stream positions they came from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SampledStream<T> {
    pub values: Vec<T>,
    pub indices: Vec<u64>,
}

impl<T> SampledStream<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn push(&mut self, index: u64, value: T) {
        self.indices.push(index);
        self.values.push(value);
    }
}

/// Runs `selector` over `stream`, stopping after `max_out` emissions.
/// Indices count positions in `stream` from zero.
pub fn sample<T, S, I, V>(stream: I, selector: &S, max_out: usize) -> Result<SampledStream<T>>
where
    T: Scalar,
    S: Selector<T>,
    I: IntoIterator<Item = V>,
    V: AsRef<[T]>,
{
    let need = selector.required_dimension();
    let mut out = SampledStream { values: Vec::new(), indices: Vec::new() };
    if max_out == 0 {
        return Ok(out);
    }
    for (n, x) in stream.into_iter().enumerate() {
        let x = x.as_ref();
        if x.len() < need {
            return Err(Error::DimensionMismatch { expected: need, got: x.len() });
        }
        if let Some(v) = selector.select(x) {
            out.push(n as u64, v);
            if out.len() == max_out {
                break;
            }
        }
    }
    Ok(out)
}

pub fn sample_threshold<T, I, V>(stream: I, cfg: &ThresholdSampler<T>, max_out: usize) -> Result<SampledStream<T>>
where
    T: Scalar,
    I: IntoIterator<Item = V>,
    V: AsRef<[T]>,
{
    sample(stream, cfg, max_out)
}

pub fn sample_mixed<T, I, V>(stream: I, cfg: &MixingSampler<T>, max_out: usize) -> Result<SampledStream<T>>
where
    T: Scalar,
    I: IntoIterator<Item = V>,
    V: AsRef<[T]>,
{
    sample(stream, cfg, max_out)
}

/// Smallest distance between consecutive source indices.
pub fn min_gap<T>(s: &SampledStream<T>) -> Result<u64> {
    s.indices.windows(2).map(|w| w[1] - w[0]).min().ok_or(Error::UndefinedGap(s.len()))
}

/// A generator whose output is filtered through a [`Selector`].
///
/// Indices are post-transient step positions of the underlying map.
#[derive(Debug, Clone)]
pub struct EnhancedGenerator<T, S> {
    map: CoupledTentMap<T>,
    selector: S,
}

impl<T: Scalar, S: Selector<T>> EnhancedGenerator<T, S> {
    pub fn new(map: CoupledTentMap<T>, selector: S) -> Result<Self> {
        let need = selector.required_dimension();
        if map.dimension() < need {
            return Err(Error::DimensionMismatch { expected: need, got: map.dimension() });
        }
        Ok(EnhancedGenerator { map, selector })
    }

    pub fn map(&self) -> &CoupledTentMap<T> {
        &self.map
    }

    pub fn selector(&self) -> &S {
        &self.selector
    }

    /// Steps the map until the selector fires.
    pub fn next_sample(&mut self) -> Result<(u64, T)> {
        loop {
            let x = self.map.next_state()?;
            if let Some(v) = self.selector.select(x) {
                return Ok((self.map.emitted() - 1, v));
            }
        }
    }

    /// Collects exactly `max_out` samples.
    pub fn take(&mut self, max_out: usize) -> Result<SampledStream<T>> {
        let mut out = SampledStream { values: Vec::with_capacity(max_out), indices: Vec::with_capacity(max_out) };
        for _ in 0..max_out {
            let (n, v) = self.next_sample()?;
            out.push(n, v);
        }
        Ok(out)
    }

    /// Takes `count` map steps and keeps every sample with its index.
    pub fn collect_steps(&mut self, count: u64) -> Result<SampledStream<T>> {
        let selector = &self.selector;
        let mut out = SampledStream { values: Vec::new(), indices: Vec::new() };
        let mut index = self.map.emitted();
        self.map.run(count, |x| {
            if let Some(v) = selector.select(x) {
                out.push(index, v);
            }
            index += 1;
            Ok(())
        })?;
        Ok(out)
    }

    /// Takes `count` map steps and passes every sampled value to `visit`.
    /// Returns the number of samples.
    pub fn run<F>(&mut self, count: u64, mut visit: F) -> Result<u64>
    where
        F: FnMut(T) -> Result<()>,
    {
        let selector = &self.selector;
        let mut emitted = 0;
        self.map.run(count, |x| {
            if let Some(v) = selector.select(x) {
                emitted += 1;
                visit(v)?;
            }
            Ok(())
        })?;
        Ok(emitted)
    }
}
