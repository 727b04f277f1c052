//! Scalar abstraction for the class and linear-algebra code.
//!
//! Everything mathematical in this crate is written against [`Scalar`], so the
//! same formulas evaluate over exact rationals (the default, see
//! [`crate::Rational`]), machine rationals, or `f64` for quick estimates.
//! Only exact types give exact answers; float instantiations are for
//! cross-checks and plotting.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

/// A field-like number type usable as a divisor coefficient.
pub trait Scalar: Clone + Debug + PartialEq + Num + Signed + FromPrimitive + Send + Sync {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Signed + FromPrimitive + Send + Sync {}

/// Embeds an integer.
#[inline]
pub fn int<T: Scalar>(x: i64) -> T {
    T::from_i64(x).expect("integer fits in scalar type")
}

/// `x / 2` for an integer `x`.
#[inline]
pub fn half<T: Scalar>(x: i64) -> T {
    int::<T>(x) / int::<T>(2)
}

/// Generalised binomial `x(x-1)/2`, valid for negative `x`.
#[inline]
pub fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}
