//! Box-count estimates of the invariant measure and their distance from the
//! uniform law.
//!
//! `[-1, 1]` is cut into `M` boxes `[s_i, s_{i+1})` with `s_i = -1 + 2i/M`,
//! the last box closed at 1. From the counts `#r_i` of `N` points:
//!
//! * density `P_i = ½ · (M/N) · #r_i`, integrating to 1 over `[-1, 1]`;
//! * on the `M × M` grid of the square, `C_ij = ¼ · (M²/N) · #r_ij`.
//!
//! Discrepancies are measured on the relative deviation from the uniform
//! value under the normalized Lebesgue measure:
//! `E1 = (1/M) Σ |2P_i − 1|`, `E2² = (1/M) Σ (2P_i − 1)²`, and the same with
//! `4C_ij − 1` and `1/M²` in two dimensions.

use crate::error::{Error, Result};
use crate::sampler::SampledStream;
use crate::scalar::Scalar;

/// Largest box count accepted for a 1-D partition.
pub const MAX_BOXES_1D: usize = 10_000_000;
/// Largest per-axis box count accepted for a 2-D partition.
pub const MAX_BOXES_PER_AXIS_2D: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partition1D {
    m: usize,
}

impl Partition1D {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_BOXES_1D {
            return Err(Error::InvalidPartition(format!("{m} boxes, expected 1..={MAX_BOXES_1D}")));
        }
        Ok(Partition1D { m })
    }

    pub fn boxes(&self) -> usize {
        self.m
    }

    pub fn width(&self) -> f64 {
        2.0 / self.m as f64
    }

    /// Left end `s_i` of box `i` (`s_M = 1`).
    #[inline]
    pub fn edge(&self, i: usize) -> f64 {
        -1.0 + (2 * i) as f64 / self.m as f64
    }

    /// Box holding `x`. The arithmetic guess is corrected against the edges
    /// so that `x = s_i` always lands in box `i`.
    #[inline]
    pub fn index(&self, x: f64) -> Result<usize> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::OutOfRange(x));
        }
        let m = self.m;
        let mut i = (((x + 1.0) * (m as f64 * 0.5)) as usize).min(m - 1);
        if i > 0 && x < self.edge(i) {
            i -= 1;
        } else if i + 1 < m && x >= self.edge(i + 1) {
            i += 1;
        }
        Ok(i)
    }
}

/// The `M × M` grid on `[-1, 1]²`, same edges on both axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partition2D {
    axis: Partition1D,
}

impl Partition2D {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_BOXES_PER_AXIS_2D {
            return Err(Error::InvalidPartition(format!("{m} boxes per axis, expected 1..={MAX_BOXES_PER_AXIS_2D}")));
        }
        Ok(Partition2D { axis: Partition1D { m } })
    }

    pub fn boxes_per_axis(&self) -> usize {
        self.axis.m
    }

    pub fn axis(&self) -> &Partition1D {
        &self.axis
    }

    pub fn area(&self) -> f64 {
        self.axis.width() * self.axis.width()
    }

    #[inline]
    pub fn index(&self, x: f64, y: f64) -> Result<(usize, usize)> {
        Ok((self.axis.index(x)?, self.axis.index(y)?))
    }
}

/// Accumulators with identical partitions can be summed box by box.
pub trait Mergeable: Sized + Clone {
    fn merge_from(&mut self, other: &Self) -> Result<()>;
}

/// `a + b`, leaving both inputs untouched.
pub fn merge<A: Mergeable>(a: &A, b: &A) -> Result<A> {
    let mut out = a.clone();
    out.merge_from(b)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistogramAccumulator1D {
    partition: Partition1D,
    counts: Vec<u64>,
    total: u64,
}

impl HistogramAccumulator1D {
    pub fn new(partition: Partition1D) -> Self {
        HistogramAccumulator1D { counts: vec![0; partition.m], partition, total: 0 }
    }

    pub fn with_boxes(m: usize) -> Result<Self> {
        Ok(Self::new(Partition1D::new(m)?))
    }

    #[inline]
    pub fn tally(&mut self, x: f64) -> Result<()> {
        let i = self.partition.index(x)?;
        self.counts[i] += 1;
        self.total += 1;
        Ok(())
    }

    pub fn partition(&self) -> &Partition1D {
        &self.partition
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Mergeable for HistogramAccumulator1D {
    fn merge_from(&mut self, other: &Self) -> Result<()> {
        if self.partition != other.partition {
            return Err(Error::PartitionMismatch(self.partition.m, other.partition.m));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }
}

/// Counts stored row-major: box `(i, j)` at `i·M + j`, `i` indexing `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistogramAccumulator2D {
    partition: Partition2D,
    counts: Vec<u64>,
    total: u64,
}

impl HistogramAccumulator2D {
    pub fn new(partition: Partition2D) -> Self {
        let m = partition.boxes_per_axis();
        HistogramAccumulator2D { counts: vec![0; m * m], partition, total: 0 }
    }

    pub fn with_boxes(m: usize) -> Result<Self> {
        Ok(Self::new(Partition2D::new(m)?))
    }

    #[inline]
    pub fn tally(&mut self, x: f64, y: f64) -> Result<()> {
        let (i, j) = self.partition.index(x, y)?;
        self.counts[i * self.partition.boxes_per_axis() + j] += 1;
        self.total += 1;
        Ok(())
    }

    pub fn partition(&self) -> &Partition2D {
        &self.partition
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.partition.boxes_per_axis() + j]
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Mergeable for HistogramAccumulator2D {
    fn merge_from(&mut self, other: &Self) -> Result<()> {
        if self.partition != other.partition {
            return Err(Error::PartitionMismatch(self.partition.boxes_per_axis(), other.partition.boxes_per_axis()));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }
}

/// Step-function density `P_{M,N}` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    pub values: Vec<f64>,
}

/// Step-function density `C_{M,N}` on `[-1, 1]²`, row-major like the counts.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationEstimate {
    pub m: usize,
    pub values: Vec<f64>,
}

impl CorrelationEstimate {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.m + j]
    }
}

pub fn density(acc: &HistogramAccumulator1D) -> Result<DensityEstimate> {
    if acc.total == 0 {
        return Err(Error::UndefinedEstimate("density of an empty histogram"));
    }
    // M·c/N rather than (M/N)·c: exactly 1 when the counts are uniform.
    let (m, n) = (acc.partition.m as f64, acc.total as f64);
    Ok(DensityEstimate { values: acc.counts.iter().map(|&c| 0.5 * (m * c as f64 / n)).collect() })
}

pub fn correlation(acc: &HistogramAccumulator2D) -> Result<CorrelationEstimate> {
    if acc.total == 0 {
        return Err(Error::UndefinedEstimate("correlation of an empty histogram"));
    }
    let m = acc.partition.boxes_per_axis();
    let (boxes, n) = ((m * m) as f64, acc.total as f64);
    Ok(CorrelationEstimate { m, values: acc.counts.iter().map(|&c| 0.25 * (boxes * c as f64 / n)).collect() })
}

/// Distance of an estimate from the uniform density.
pub trait Discrepancy {
    /// `‖estimate/uniform − 1‖_{L1}` under the normalized measure.
    fn l1(&self) -> f64;

    /// Square of the matching L2 norm.
    fn l2_squared(&self) -> f64;
}

impl Discrepancy for DensityEstimate {
    fn l1(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|&p| (2.0 * p - 1.0).abs()).sum();
        sum / self.values.len() as f64
    }

    fn l2_squared(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|&p| (2.0 * p - 1.0) * (2.0 * p - 1.0)).sum();
        sum / self.values.len() as f64
    }
}

impl Discrepancy for CorrelationEstimate {
    fn l1(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|&c| (4.0 * c - 1.0).abs()).sum();
        sum / self.values.len() as f64
    }

    fn l2_squared(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|&c| (4.0 * c - 1.0) * (4.0 * c - 1.0)).sum();
        sum / self.values.len() as f64
    }
}

pub fn discrepancy_l1<E: Discrepancy>(est: &E) -> f64 {
    est.l1()
}

pub fn discrepancy_l2_squared<E: Discrepancy>(est: &E) -> f64 {
    est.l2_squared()
}

/// Streams a sequence into its consecutive-pair histogram
/// `(v_0, v_1), (v_1, v_2), …`.
#[derive(Debug, Clone)]
pub struct PairAccumulator {
    hist: HistogramAccumulator2D,
    last: Option<f64>,
}

impl PairAccumulator {
    pub fn new(partition: Partition2D) -> Self {
        PairAccumulator { hist: HistogramAccumulator2D::new(partition), last: None }
    }

    #[inline]
    pub fn push(&mut self, v: f64) -> Result<()> {
        if let Some(prev) = self.last {
            self.hist.tally(prev, v)?;
        } else if !(-1.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange(v));
        }
        self.last = Some(v);
        Ok(())
    }

    pub fn histogram(&self) -> &HistogramAccumulator2D {
        &self.hist
    }

    pub fn estimate(&self) -> Result<CorrelationEstimate> {
        correlation(&self.hist)
    }
}

/// Correlation estimate of consecutive sampled values.
pub fn autocorrelation_estimate<T: Scalar>(s: &SampledStream<T>, m: usize) -> Result<CorrelationEstimate> {
    if s.len() < 2 {
        return Err(Error::UndefinedEstimate("autocorrelation needs at least two values"));
    }
    let mut acc = PairAccumulator::new(Partition2D::new(m)?);
    for &v in &s.values {
        acc.push(v.to_f64_lossless())?;
    }
    acc.estimate()
}
