//! Exact rational numbers.
//!
//! Every coordinate and coefficient in the crate is a [`Rational`]; nothing is
//! ever rounded.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// A point of an affine space, in whatever coordinates the owner uses.
pub type Point = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7"`, `"2/5"` or `"-1/2"`. Whitespace around the parts is allowed.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| err())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_f64(r: &Rational) -> f64 {
    // Good enough for the numeric winding check; exact paths never call this.
    let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // Very large numerator/denominator: scale down by the shared magnitude.
        let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(1000);
        let n: BigInt = r.numer() >> shift;
        let d: BigInt = r.denom() >> shift;
        let nf = n.to_string().parse::<f64>().unwrap_or(0.0);
        let df = d.to_string().parse::<f64>().unwrap_or(1.0);
        nf / df
    }
}

/// Least common multiple of the denominators, for clearing fractions.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| num_integer::Integer::lcm(&acc, r.denom()))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
