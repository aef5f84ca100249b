//! Exact scalar fields.
//!
//! Every algorithm in the crate is written against [`Field`]. Pivot selection and
//! rank decisions test for exact zero, so only exact fields implement the trait;
//! the concrete default used throughout the crate root aliases is
//! [`Rational`](crate::Rational), an arbitrary-precision rational.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact field of characteristic zero.
pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
  /// Embeds an integer.
  fn from_int(n: i64) -> Self;

  /// The multiplicative inverse of `n + 1`, which shows up whenever unit mass is
  /// split between the vertices of a simplex.
  fn recip_of_count(n: usize) -> Self {
    Self::one() / Self::from_int(n as i64)
  }

  fn sign(odd: bool) -> Self {
    if odd {
      -Self::one()
    } else {
      Self::one()
    }
  }
}

impl<T> Field for Ratio<T>
where
  T: Clone + Integer + Signed + Debug + From<i64> + Send + Sync + 'static,
{
  fn from_int(n: i64) -> Self { Ratio::from_integer(T::from(n)) }
}
