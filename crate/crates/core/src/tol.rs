//! Numerical tolerances shared by every decider.

use std::sync::atomic::{AtomicU64, Ordering};

/// Normalization tolerance for probability vectors.
pub const TOL_SUM: f64 = 1e-12;

/// Default tolerance for prefix-sum and entropy comparisons.
pub const TOL_CMP_DEFAULT: f64 = 1e-9;

/// Tolerance for channel algebra (completeness, nonzero detection).
pub const TOL_CHAN: f64 = 1e-10;

/// Entries below this after canonicalization are set to exactly zero.
pub const ZERO_CLAMP: f64 = 1e-15;

// f64 bits of the scale factor; 0 means "unset" (scale 1).
static CMP_SCALE: AtomicU64 = AtomicU64::new(0);

/// Current comparison tolerance, `TOL_CMP_DEFAULT` times the global scale.
pub fn cmp() -> f64 {
    TOL_CMP_DEFAULT * cmp_scale()
}

pub fn cmp_scale() -> f64 {
    match CMP_SCALE.load(Ordering::Relaxed) {
        0 => 1.0,
        bits => f64::from_bits(bits),
    }
}

/// Scale the comparison tolerance process-wide. Intended for testing only.
///
/// Non-finite or non-positive scales are ignored.
pub fn set_cmp_scale(scale: f64) {
    if scale.is_finite() && scale > 0.0 {
        CMP_SCALE.store(scale.to_bits(), Ordering::Relaxed);
    }
}
