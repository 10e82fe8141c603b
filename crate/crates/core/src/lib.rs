//! Chaotic number generators built from weakly coupled symmetric tent maps.
//!
//! * [`map`]: the coupled recurrence `X_{n+1} = A · f(X_n)`.
//! * [`sampler`]: chaotic threshold sampling and three-band mixing, which hide
//!   the tent map from the `(x_n, x_{n+1})` phase plane.
//! * [`analysis`]: box-count density, correlation and autocorrelation
//!   estimates and their L1 / L2 distance from the uniform law.
//! * [`experiments`]: sweeps, seed scans, cycle detection and throughput.
//!
//! The generator and sampler are generic over [`Scalar`]; the aliases below
//! fix the double precision setup every experiment uses.

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod map;
pub mod presets;
pub mod sampler;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type CouplingConfig = map::CouplingConfig<f64>;
pub type CouplingMatrix = map::CouplingMatrix<f64>;
pub type StateVector = map::StateVector<f64>;
pub type Generator = map::CoupledTentMap<f64>;
pub type ThresholdSampler = sampler::ThresholdSampler<f64>;
pub type MixingSampler = sampler::MixingSampler<f64>;
pub type SampledStream = sampler::SampledStream<f64>;

pub type CouplingConfig32 = map::CouplingConfig<f32>;
pub type Generator32 = map::CoupledTentMap<f32>;
