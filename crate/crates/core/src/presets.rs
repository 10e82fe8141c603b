//! Parameter sets used by the reference experiments.

/// Coupling strength for double precision runs.
pub const EPS1: f64 = 1e-14;

/// Steps discarded before any statistic is collected.
pub const DEFAULT_TRANSIENT: u64 = 1000;

/// Initial point for the marginal density runs (first `p` entries are used).
pub const DENSITY_INITIAL: [f64; 4] = [0.330000013113, 0.338756413113, 0.331353442113, 0.333213583113];

/// Initial point for the cross-correlation and sampling runs.
pub const CANONICAL_INITIAL: [f64; 4] = [0.330, 0.3387564, 0.50492331, 0.0];

/// Seed family `x^j_{0,k} = base_j + stride · mult_j · k`.
pub const SEED_SCAN_BASE: [f64; 4] = [-0.92712, -0.9183636, -0.92576657, -0.92390643];
pub const SEED_SCAN_MULTIPLIERS: [u64; 4] = [1, 7, 13, 17];
pub const SEED_SCAN_STRIDE: f64 = 1e-7;

pub const SAMPLING_THRESHOLD: f64 = 0.998;
pub const MIXING_THRESHOLDS: [f64; 3] = [0.998, 0.9987, 0.9994];
