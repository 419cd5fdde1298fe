//! Scalar abstraction for the numeric core.
//!
//! Everything numeric in this crate is generic over [`Scalar`], so the same
//! code runs in `f32` or `f64`. Concrete aliases live at the crate root
//! ([`crate::Real`]).

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar usable throughout the crate: `f32` or `f64`.
pub trait Scalar: RealField + FromPrimitive + ToPrimitive + Copy + Default {}

impl<T> Scalar for T where T: RealField + FromPrimitive + ToPrimitive + Copy + Default {}

/// Shorthand for converting an `f64` constant into the working scalar type.
#[inline]
pub fn fr<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Shorthand for converting a count into the working scalar type.
#[inline]
pub fn fu<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// Lossy view of a scalar as `f64`, for interop with `f64`-only routines.
#[inline]
pub fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().expect("scalar convertible to f64")
}
