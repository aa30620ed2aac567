//! Floating-point abstraction shared by the numerical layers.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the quadrature, permittivity and Green-tensor code is generic over.
///
/// Implemented for `f32` and `f64`. The potential layer itself is `f64`
/// only: SI magnitudes such as `ħ²γₙ²μ₀ ≈ 5e-58` lie below the `f32`
/// exponent range.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static {
    /// Converts an `f64` literal. Panics only for values the type cannot hold at all.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
