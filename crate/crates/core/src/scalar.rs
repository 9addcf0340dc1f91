//! Scalar abstraction for the simulator's amplitudes.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar backing an amplitude: `f32` or `f64`.
///
/// Each implementation carries the tolerances that are meaningful at its
/// precision. The `f64` values are the contractual ones; `f32` values are
/// scaled to what single precision can hold.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Allowed deviation from unit norm for a state crossing a module boundary.
    fn norm_tolerance() -> Self;
    /// Allowed deviation for algebraic identities (norm preservation, Born sums).
    fn identity_tolerance() -> Self;
    /// Residual norm below which a rejection is treated as zero.
    fn residual_floor() -> Self;
    /// Branch mass below which a sampled measurement branch is inconsistent.
    fn degenerate_mass() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn norm_tolerance() -> Self {
        1e-9
    }
    fn identity_tolerance() -> Self {
        1e-12
    }
    fn residual_floor() -> Self {
        1e-12
    }
    fn degenerate_mass() -> Self {
        1e-15
    }
}

impl Real for f32 {
    fn norm_tolerance() -> Self {
        1e-4
    }
    fn identity_tolerance() -> Self {
        1e-5
    }
    fn residual_floor() -> Self {
        1e-6
    }
    fn degenerate_mass() -> Self {
        1e-7
    }
}
