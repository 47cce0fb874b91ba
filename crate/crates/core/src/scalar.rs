use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used throughout the crate: `f32` or `f64`.
///
/// Certified radii are tracked in the same type, so `f32` instantiations are
/// valid but much wider than the `f64` ones.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal; rounding to nearest for narrower types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// One unit in the last place of `self`, never smaller than the least
    /// positive normal number.
    #[inline]
    fn ulp(self) -> Self {
        (self.abs() * Self::epsilon()).max(Self::min_positive_value())
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ulp_is_positive() {
        assert!(0.0f64.ulp() > 0.0);
        assert_eq!(1.0f64.ulp(), f64::EPSILON);
        assert_eq!(f32::lit(0.5), 0.5f32);
    }
}
