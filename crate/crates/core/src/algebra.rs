//! Scalar building blocks: exact rationals, factorials, falling factorials
//! and binomial coefficients that stay total for negative upper arguments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator. Zero is `0/1`.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Renders as `p/q`, or `p` alone when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `a (a-1) ... (a-k+1)`, with the empty product for `k = 0`.
pub fn falling_factorial_scalar(a: i64, k: usize) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, j| acc * (a - j))
}

/// `binom(a, k)` for any integer `a`, defined as `(a)_k / k!`.
pub fn binomial_general(a: i64, k: usize) -> BigInt {
    falling_factorial_scalar(a, k) / factorial(k)
}
