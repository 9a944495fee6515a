//! Scalar abstraction for the numeric kernels.
//!
//! Special functions and quadrature are written once over [`Scalar`] and
//! instantiated for `f64` (the default everywhere) or `f32`.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating point type usable by the numeric code: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion of an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion of a count.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
