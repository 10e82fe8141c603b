//! Floating-point scalar abstraction for the generator and sampler.

use std::fmt::{Debug, Display};

use num_traits::Float;

/// IEEE-754 binary floating type the coupled map can run on.
///
/// Everything the recurrence needs comes from [`Float`]; the extra methods
/// give bitwise identity (for cycle detection) and lossless widening to `f64`
/// (for box counting).
pub trait Scalar: Float + Debug + Display + Send + Sync + 'static {
    /// Raw bit pattern, zero-extended to 64 bits.
    fn to_bits_u64(self) -> u64;

    fn to_f64_lossless(self) -> f64;

    /// Slack allowed on the `[-1, 1]` range check of state components.
    fn range_slack() -> Self {
        Self::from_f64(2f64.powi(-40)).max(Self::epsilon() * Self::from_f64(4.0))
    }

    fn from_f64(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).unwrap()
    }
}

impl Scalar for f64 {
    #[inline]
    fn to_bits_u64(self) -> u64 {
        self.to_bits()
    }

    #[inline]
    fn to_f64_lossless(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    #[inline]
    fn to_bits_u64(self) -> u64 {
        u64::from(self.to_bits())
    }

    #[inline]
    fn to_f64_lossless(self) -> f64 {
        f64::from(self)
    }
}
