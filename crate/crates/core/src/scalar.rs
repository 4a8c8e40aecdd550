//! Scalar abstraction shared by the numerical core.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the simulation is generic over: `f32` or `f64`.
///
/// Tolerances quoted throughout the crate (1e-9 normalization, 1e-6 oracle
/// agreement) are only reachable in `f64`; `f32` runs the same code paths at
/// single precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + rustfft::FftNum + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into this type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
