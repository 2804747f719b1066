//! Scalar abstractions.
//!
//! Combinatorial work (roots, Weyl groups, chambers, constants) runs over an
//! exact ordered field implementing [`Scalar`]; numerical evaluation of torus
//! characters runs over any [`num_traits::Float`].

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio, Rational64};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact ordered field used for every combinatorial computation.
pub trait Scalar:
    Clone
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// `n / d`; panics on `d == 0`.
    fn ratio(n: i64, d: i64) -> Self;

    fn is_integral(&self) -> bool;

    /// The value as an `i64` when it is an integer that fits.
    fn as_integer(&self) -> Option<i64>;

    fn from_int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }
}

impl Scalar for BigRational {
    fn ratio(n: i64, d: i64) -> Self {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl Scalar for Rational64 {
    fn ratio(n: i64, d: i64) -> Self {
        Ratio::new(n, d)
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            Some(*self.numer())
        } else {
            None
        }
    }
}

/// Sign of an exact scalar as `-1`, `0` or `1`.
pub fn sign_of<S: Scalar>(x: &S) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Lossy conversion of an exact scalar into a float type.
pub fn to_float<S: Scalar, F: num_traits::Float>(x: &S) -> F {
    F::from(x.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_display_is_p_over_q() {
        assert_eq!(BigRational::ratio(6, 4).to_string(), "3/2");
        assert_eq!(BigRational::ratio(-4, 2).to_string(), "-2");
        assert_eq!(Rational64::ratio(1, -3).to_string(), "-1/3");
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        let a: BigRational = "7".parse().unwrap();
        let b: BigRational = "-3/6".parse().unwrap();
        assert_eq!(a, BigRational::from_int(7));
        assert_eq!(b, BigRational::ratio(-1, 2));
    }

    #[test]
    fn integrality() {
        assert_eq!(BigRational::ratio(8, 2).as_integer(), Some(4));
        assert_eq!(BigRational::ratio(1, 2).as_integer(), None);
        assert!(Rational64::ratio(9, 3).is_integral());
    }
}
