//! Exact ordered-field scalars.
//!
//! Everything in this crate is generic over [`Scalar`], which is implemented
//! for every `num_rational::Ratio<I>` with a signed integer backing type. The
//! arbitrary-precision [`BigRational`](num_rational::BigRational) is the
//! default used by the crate-root aliases; `Ratio<i64>` and `Ratio<i128>` are
//! faster but can overflow on large inputs.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::ToBigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact ordered field with conversions to and from machine integers.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Num + Signed + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self;

    /// `numer / denom`. Panics if `denom == 0`.
    fn from_frac(numer: i64, denom: i64) -> Self;

    fn floor_i64(&self) -> i64;

    fn ceil_i64(&self) -> i64;

    fn is_integral(&self) -> bool;

    /// Nearest `f64`, for plotting output only.
    fn to_f64_approx(&self) -> f64;

    /// Lowest-terms `"p/q"` with `q > 0` (integers are written `"p/1"`).
    fn to_exact_string(&self) -> String;

    /// Parses `"p/q"` or `"p"`.
    fn parse_exact(text: &str) -> Option<Self>;

    fn half() -> Self {
        Self::from_frac(1, 2)
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + ToBigInt
        + Send
        + Sync
        + 'static,
{
    fn from_int(value: i64) -> Self {
        Ratio::from_integer(I::from_i64(value).expect("integer out of range"))
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        let n = I::from_i64(numer).expect("integer out of range");
        let d = I::from_i64(denom).expect("integer out of range");
        Ratio::new(n, d)
    }

    fn floor_i64(&self) -> i64 {
        self.floor().to_integer().to_i64().expect("floor out of i64 range")
    }

    fn ceil_i64(&self) -> i64 {
        self.ceil().to_integer().to_i64().expect("ceil out of i64 range")
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_f64_approx(&self) -> f64 {
        if let Some(v) = ToPrimitive::to_f64(self) {
            return v;
        }
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    fn to_exact_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_exact(text: &str) -> Option<Self> {
        let text = text.trim();
        let value = match text.split_once('/') {
            Some((n, d)) => {
                let n: I = n.trim().parse().ok()?;
                let d: I = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Ratio::new(n, d)
            }
            None => Ratio::from_integer(text.parse().ok()?),
        };
        Some(value)
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], x: &[T]) -> T {
    a.iter()
        .zip(x)
        .fold(T::zero(), |acc, (ai, xi)| acc + ai.clone() * xi.clone())
}

pub(crate) fn int_point<T: Scalar>(z: &[i64]) -> Vec<T> {
    z.iter().map(|&v| T::from_int(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn exact_string_round_trip() {
        let q = BigRational::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(q.to_exact_string(), "-3/2");
        assert_eq!(BigRational::parse_exact("-3/2"), Some(q));
        assert_eq!(BigRational::parse_exact("7").unwrap().to_exact_string(), "7/1");
        assert_eq!(BigRational::parse_exact("1/0"), None);
        assert_eq!(BigRational::parse_exact("x"), None);
    }

    #[test]
    fn floor_and_ceil_of_negative_fractions() {
        let q = Rational64::from_frac(-7, 2);
        assert_eq!(q.floor_i64(), -4);
        assert_eq!(q.ceil_i64(), -3);
        assert!(!q.is_integral());
        assert!(Rational64::from_int(3).is_integral());
    }
}
