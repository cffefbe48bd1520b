//! Scalar abstraction for the numerical core.
//!
//! Everything in this crate is generic over a floating-point scalar so the
//! same formulas run at `f32` or `f64`. The published accuracy targets
//! (1e-15 CDF, 1e-14 Owen's T, ...) are only meaningful for `f64`; the
//! crate-root aliases pin that as the default scalar.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::Float;

/// Floating-point scalar the library operates on: `f32` or `f64`.
pub trait Real: Float + Debug + Display + LowerExp + Send + Sync + 'static {
    /// Lift an `f64` literal (coefficient tables, tolerances) into `Self`.
    #[inline]
    fn of(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("literal representable in scalar type")
    }

    /// Lossy view as `f64`, used for formatting and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).expect("scalar convertible to f64")
    }

    /// Lift a small integer (loop counters in series expansions).
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::of(n as f64)
    }
}

impl Real for f32 {}
impl Real for f64 {}
