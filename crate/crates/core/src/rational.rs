//! Exact rational helpers shared by every layer.
//!
//! All probabilities are `BigRational`, always in lowest terms with a
//! positive denominator (guaranteed by `num-rational`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Builds `num/den` in reduced form. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Serializes as `p/q`, including integers (`1/1`, `0/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, r| acc + r)
}

pub(crate) fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}

/// Exact `r * scale` as an integer, if it is one.
pub(crate) fn scaled_integer(r: &Rational, scale: usize) -> Option<usize> {
    let scaled = r * Rational::from_integer(BigInt::from(scale));
    if !scaled.is_integer() {
        return None;
    }
    scaled.to_integer().try_into().ok()
}
