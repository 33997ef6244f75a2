//! Floating-point scalar abstraction shared by the numerical modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type the numerical layers are generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    fn from_i64_exact(n: i64) -> Self {
        Self::from_i64(n).expect("i64 representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Returns `Some(n)` if `x` is an integer-valued float.
pub(crate) fn as_integer<T: Real>(x: T) -> Option<i64> {
    if x.is_finite() && x == x.round() {
        x.to_i64()
    } else {
        None
    }
}

/// Non-positive integer test used for Pochhammer / Gamma poles.
pub(crate) fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    matches!(as_integer(x), Some(n) if n <= 0)
}

/// `sin(πx)`, exactly zero at integers and exactly ±1 at half-integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    if as_integer(x).is_some() {
        return T::zero();
    }
    let two = T::lit(2.0);
    if let Some(n) = as_integer(x * two) {
        // x = n/2 with n odd
        return if (n - 1).rem_euclid(4) == 0 { T::one() } else { -T::one() };
    }
    // reduce to [-1, 1) before multiplying by π
    let r = x - two * (x / two).floor();
    let r = if r >= T::one() { r - two } else { r };
    (r * T::PI()).sin()
}

/// `cos(πx)`, exactly ±1 at integers and exactly zero at half-integers.
pub fn cos_pi<T: Real>(x: T) -> T {
    if let Some(n) = as_integer(x) {
        return if n.rem_euclid(2) == 0 { T::one() } else { -T::one() };
    }
    if as_integer(x * T::lit(2.0)).is_some() {
        return T::zero();
    }
    sin_pi(x + T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_at_special_points() {
        assert_eq!(sin_pi(3.0_f64), 0.0);
        assert_eq!(sin_pi(-2.0_f64), 0.0);
        assert_eq!(sin_pi(0.5_f64), 1.0);
        assert_eq!(sin_pi(1.5_f64), -1.0);
        assert_eq!(sin_pi(-0.5_f64), -1.0);
        assert_eq!(cos_pi(1.0_f64), -1.0);
        assert_eq!(cos_pi(-0.5_f64), 0.0);
        assert_eq!(cos_pi(4.0_f32), 1.0);
    }

    #[test]
    fn trig_generic_points() {
        for &x in &[0.1_f64, -0.37, 2.25, 7.8, -13.4] {
            assert!((sin_pi(x) - (x * std::f64::consts::PI).sin()).abs() < 1e-12);
            assert!((cos_pi(x) - (x * std::f64::consts::PI).cos()).abs() < 1e-12);
        }
    }
}
