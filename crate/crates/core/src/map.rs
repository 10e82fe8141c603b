//! Weakly coupled symmetric tent maps.
//!
//! The generator iterates `X_{n+1} = A · f(X_n)` on `[-1, 1]^p`, where `f`
//! applies the tent map `1 - a|x|` to each component and `A` is a row
//! stochastic matrix whose row `i` carries `1 - (p-1)·ε_i` on the diagonal and
//! `ε_i` everywhere else. With `ε_i` of order `1e-14` the marginals are those
//! of the plain tent map, but rounding at the coupling step keeps the
//! discretized orbit from collapsing onto a short cycle.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetric tent map `1 - a|x|`.
#[inline(always)]
pub fn tent<T: Scalar>(x: T, a: T) -> T {
    T::one() - a * x.abs()
}

/// How the per-row coupling constants were derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioRule {
    /// `ε_i = i · ε_1` (1-based `i`).
    Linear,
    /// Caller supplied every `ε_i`.
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingConfig<T> {
    p: usize,
    a: T,
    eps: Vec<T>,
    ratio_rule: RatioRule,
}

impl<T: Scalar> CouplingConfig<T> {
    /// `p` maps with `ε_i = i·eps1` and slope 2.
    pub fn linear(p: usize, eps1: T) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidCoupling("dimension p must be at least 1".into()));
        }
        let eps = (1..=p).map(|i| T::from_f64(i as f64) * eps1).collect();
        Self::checked(CouplingConfig { p, a: T::from_f64(2.0), eps, ratio_rule: RatioRule::Linear })
    }

    pub fn explicit(eps: Vec<T>) -> Result<Self> {
        if eps.is_empty() {
            return Err(Error::InvalidCoupling("dimension p must be at least 1".into()));
        }
        Self::checked(CouplingConfig { p: eps.len(), a: T::from_f64(2.0), eps, ratio_rule: RatioRule::Explicit })
    }

    /// Replaces the tent slope. Only `a ∈ (0, 2]` maps `[-1, 1]` into itself.
    pub fn with_slope(mut self, a: T) -> Result<Self> {
        self.a = a;
        Self::checked(self)
    }

    fn checked(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.eps.len() != self.p {
            return Err(Error::InvalidCoupling(format!(
                "expected {} coupling constants, got {}",
                self.p,
                self.eps.len()
            )));
        }
        if !(self.a > T::zero() && self.a <= T::from_f64(2.0)) {
            return Err(Error::InvalidCoupling(format!("slope a = {} outside (0, 2]", self.a)));
        }
        let others = T::from_f64((self.p - 1) as f64);
        for (i, &e) in self.eps.iter().enumerate() {
            if !e.is_finite() || e < T::zero() {
                return Err(Error::InvalidCoupling(format!("eps[{i}] = {e} is negative or non-finite")));
            }
            if T::one() - others * e <= T::zero() {
                return Err(Error::InvalidCoupling(format!(
                    "eps[{i}] = {e} leaves a non-positive diagonal for p = {}",
                    self.p
                )));
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.p
    }

    pub fn slope(&self) -> T {
        self.a
    }

    pub fn eps(&self) -> &[T] {
        &self.eps
    }

    pub fn ratio_rule(&self) -> RatioRule {
        self.ratio_rule
    }
}

/// Dense `p × p` coupling matrix `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix<T> {
    p: usize,
    entries: Vec<T>,
}

impl<T: Scalar> CouplingMatrix<T> {
    pub fn new(config: &CouplingConfig<T>) -> Result<Self> {
        config.validate()?;
        let p = config.p;
        let others = T::from_f64((p - 1) as f64);
        let mut entries = Vec::with_capacity(p * p);
        for (i, &e) in config.eps.iter().enumerate() {
            let diag = T::one() - others * e;
            entries.extend((0..p).map(|j| if i == j { diag } else { e }));
        }
        Ok(CouplingMatrix { p, entries })
    }

    pub fn dimension(&self) -> usize {
        self.p
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries[row * self.p + col]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.p..(i + 1) * self.p]
    }

    pub fn row_sum(&self, i: usize) -> T {
        self.row(i).iter().fold(T::zero(), |acc, &v| acc + v)
    }

    /// Plain `out = A · v`, summing each row left to right.
    pub fn apply(&self, v: &[T], out: &mut [T]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(v).fold(T::zero(), |acc, (&m, &x)| acc + m * x);
        }
    }
}

/// A point of `[-1, 1]^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T>(Vec<T>);

impl<T: Scalar> StateVector<T> {
    /// Rejects components outside `[-1, 1]` (or non-finite).
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must be rejected too
    pub fn new(components: Vec<T>) -> Result<Self> {
        for (index, &x) in components.iter().enumerate() {
            if !(x.abs() <= T::one()) {
                return Err(Error::InvalidState { index, value: x.to_f64_lossless() });
            }
        }
        Ok(StateVector(components))
    }

    pub fn components(&self) -> &[T] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    /// Bitwise equality of every component.
    pub fn bitwise_eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.to_bits_u64() == b.to_bits_u64())
    }
}

impl<T> AsRef<[T]> for StateVector<T> {
    fn as_ref(&self) -> &[T] {
        &self.0
    }
}

/// Sequential generator over the coupled recurrence.
///
/// Emission starts once more than `transient` steps have been taken.
#[derive(Debug, Clone)]
pub struct CoupledTentMap<T> {
    config: CouplingConfig<T>,
    matrix: CouplingMatrix<T>,
    diag: Vec<T>,
    state: Vec<T>,
    images: Vec<T>,
    steps: u64,
    transient: u64,
    bound: T,
}

impl<T: Scalar> CoupledTentMap<T> {
    pub fn new(config: CouplingConfig<T>, initial: StateVector<T>) -> Result<Self> {
        let matrix = CouplingMatrix::new(&config)?;
        if initial.dimension() != config.p {
            return Err(Error::DimensionMismatch { expected: config.p, got: initial.dimension() });
        }
        let diag = (0..config.p).map(|i| matrix.get(i, i)).collect();
        Ok(CoupledTentMap {
            diag,
            images: vec![T::zero(); config.p],
            state: initial.into_inner(),
            matrix,
            config,
            steps: 0,
            transient: 0,
            bound: T::one() + T::range_slack(),
        })
    }

    pub fn with_transient(mut self, transient: u64) -> Self {
        self.transient = transient;
        self
    }

    pub fn config(&self) -> &CouplingConfig<T> {
        &self.config
    }

    pub fn matrix(&self) -> &CouplingMatrix<T> {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.config.p
    }

    pub fn current(&self) -> &[T] {
        &self.state
    }

    pub fn state_vector(&self) -> StateVector<T> {
        StateVector(self.state.clone())
    }

    /// Steps taken so far, transient included.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn transient(&self) -> u64 {
        self.transient
    }

    /// Number of post-transient states produced so far.
    pub fn emitted(&self) -> u64 {
        self.steps.saturating_sub(self.transient)
    }

    /// One application of `X ← A · f(X)`.
    ///
    /// Row `i` of the product is `d_i·f_i + ε_i·(S − f_i)` with `S = Σ f_j`,
    /// which equals the dense product because the off-diagonals of a row
    /// are all `ε_i`.
    #[inline]
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must be rejected too
    pub fn step(&mut self) -> Result<&[T]> {
        let a = self.config.a;
        let mut sum = T::zero();
        for (f, &x) in self.images.iter_mut().zip(&self.state) {
            *f = tent(x, a);
            sum = sum + *f;
        }
        self.steps += 1;
        let rows = self.state.iter_mut().zip(&self.images).zip(self.diag.iter().zip(&self.config.eps));
        for (index, ((x, &f), (&d, &e))) in rows.enumerate() {
            let next = d * f + e * (sum - f);
            if !(next.abs() <= self.bound) {
                return Err(Error::Corrupted { step: self.steps, index, value: next.to_f64_lossless() });
            }
            *x = next;
        }
        Ok(&self.state)
    }

    /// Burns whatever is left of the transient.
    pub fn skip_transient(&mut self) -> Result<()> {
        while self.steps < self.transient {
            self.step()?;
        }
        Ok(())
    }

    /// Advances to the next post-transient state.
    #[inline]
    pub fn next_state(&mut self) -> Result<&[T]> {
        if self.steps < self.transient {
            self.skip_transient()?;
        }
        self.step()
    }

    /// Takes `count` steps and hands every post-transient state to `visit`,
    /// stopping at the first error. Returns how many states were visited.
    pub fn run<F>(&mut self, count: u64, mut visit: F) -> Result<u64>
    where
        F: FnMut(&[T]) -> Result<()>,
    {
        let mut visited = 0;
        for _ in 0..count {
            let emit = self.steps >= self.transient;
            let x = self.step()?;
            if emit {
                visit(x)?;
                visited += 1;
            }
        }
        Ok(visited)
    }

    /// Takes `count` steps, yielding the post-transient states in order.
    pub fn iterate(&mut self, count: u64) -> Iterate<'_, T> {
        Iterate { map: self, remaining: count, failed: false }
    }
}

pub struct Iterate<'a, T> {
    map: &'a mut CoupledTentMap<T>,
    remaining: u64,
    failed: bool,
}

impl<T: Scalar> Iterator for Iterate<'_, T> {
    type Item = Result<StateVector<T>>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.remaining > 0 && !self.failed {
            self.remaining -= 1;
            let emit = self.map.steps >= self.map.transient;
            match self.map.step() {
                Ok(x) if emit => return Some(Ok(StateVector(x.to_vec()))),
                Ok(_) => {}
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e));
                }
            }
        }
        None
    }
}
