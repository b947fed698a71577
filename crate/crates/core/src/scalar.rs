//! Scalar and ring abstractions shared by every module.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar type the library is generic over: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Converts a count into the working scalar type.
#[inline]
pub fn from_usize<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// Commutative ring operations by value.
///
/// Implemented by scalars, series and jets, so vector and matrix
/// algebra can be written once for all of them.
pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<A> Ring for A where
    A: Clone + Add<Output = A> + Sub<Output = A> + Mul<Output = A> + Neg<Output = A>
{
}

/// Sign of a nonzero number as `+1` or `-1`; zero maps to `+1`.
#[inline]
pub fn sign_of<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        -T::one()
    } else {
        T::one()
    }
}

pub(crate) fn max_abs<T: Scalar>(it: impl IntoIterator<Item = T>) -> T {
    it.into_iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

/// A tolerance no tighter than the working precision allows.
///
/// Returns `x`, raised to `1024 ε` for scalars too coarse to resolve it.
#[inline]
pub fn tolerance<T: Scalar>(x: f64) -> T {
    lit::<T>(x).max(T::epsilon() * lit(1024.0))
}
