//! Truncated power series in `t` whose coefficients are polynomials in `x`.
//!
//! A series of order `T` knows its coefficients of `t^0 ..= t^T` and nothing
//! beyond. Binary operations produce the smaller of the two orders, and
//! differentiation drops one order.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{binomial_general, factorial, integer, rational, Rational};
use crate::error::{Error, Result};
use crate::poly::{falling_factorial_poly, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct TruncatedSeries {
    order: usize,
    #[serde(rename = "coefficients")]
    coeffs: Vec<Polynomial>,
}

#[derive(Deserialize)]
struct RawSeries {
    order: usize,
    coefficients: Vec<Polynomial>,
}

impl TryFrom<RawSeries> for TruncatedSeries {
    type Error = Error;

    fn try_from(raw: RawSeries) -> Result<Self> {
        if raw.coefficients.len() != raw.order + 1 {
            return Err(Error::Parse(format!(
                "series of order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coefficients.len()
            )));
        }
        Ok(Self {
            order: raw.order,
            coeffs: raw.coefficients,
        })
    }
}

impl TruncatedSeries {
    /// Missing coefficients are zero; those past `order` are dropped.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Polynomial>) -> Self {
        coeffs.resize(order + 1, Polynomial::zero());
        Self { order, coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Polynomial) -> Self {
        Self {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn from_scalars(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        Self::from_fn(order, |k| Polynomial::constant(f(k)))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn constant(c: Polynomial, order: usize) -> Self {
        Self::from_coeffs(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Polynomial::one(), order)
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        Self::from_coeffs(order, vec![Polynomial::zero(), Polynomial::one()])
    }

    /// `sum_n terms[n] t^n / n!`, truncated at `order`.
    pub fn exponential(terms: &[Polynomial], order: usize) -> Self {
        Self::from_fn(order, |n| match terms.get(n) {
            Some(p) => p.scale(&Rational::new(1.into(), factorial(n))),
            None => Polynomial::zero(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t^k`.
    ///
    /// Panics if `k` exceeds the order.
    pub fn coeff(&self, k: usize) -> &Polynomial {
        assert!(k <= self.order, "t^{k} is beyond order {}", self.order);
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.order, |k| self.coeffs[k].scale(c))
    }

    /// Multiplies every coefficient by the `t`-free polynomial `p`.
    pub fn scale_poly(&self, p: &Polynomial) -> Self {
        Self::from_fn(self.order, |k| &self.coeffs[k] * p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = vec![Polynomial::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { order, coeffs: out }
    }

    /// Term-wise `d/dt`.
    pub fn derivative(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::DerivativeOfOrderZero);
        }
        Ok(Self::from_fn(self.order - 1, |k| {
            self.coeffs[k + 1].scale(&integer(k + 1))
        }))
    }

    /// `n`-fold derivative; the order drops by `n`.
    pub fn nth_derivative(&self, n: usize) -> Result<Self> {
        (0..n).try_fold(self.clone(), |s, _| s.derivative())
    }

    /// `self(inner(t))` by Horner's rule. `inner` must have a zero constant
    /// term; the result has the smaller of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for c in self.coeffs[..order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `(k, d)` of the first `t^k x^d` coefficient where the two series
    /// differ, compared only up to the smaller order.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let order = self.order.min(other.order);
        (0..=order).find_map(|k| {
            self.coeffs[k]
                .first_difference(&other.coeffs[k])
                .map(|d| (k, d))
        })
    }

    /// Expansion of `(base + t)^exponent`. The coefficient of `t^m` is
    /// `binom(exponent, m) * base^(exponent - m)`.
    ///
    /// Panics if `base` is zero.
    pub fn shifted_pow(base: u32, exponent: i64, order: usize) -> Self {
        assert!(base > 0, "(0 + t)^e has no power series expansion");
        let base = BigInt::from(base);
        Self::from_scalars(order, |m| {
            let b = binomial_general(exponent, m);
            if b.is_zero() {
                return Rational::zero();
            }
            let e = exponent - m as i64;
            let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
            if e >= 0 {
                Rational::from_integer(b * p)
            } else {
                Rational::new(b, p)
            }
        })
    }

    /// `(1 + t)^x = sum_n (x)_n t^n / n!`.
    pub fn binomial_x(order: usize) -> Self {
        Self::exponential(
            &(0..=order).map(falling_factorial_poly).collect::<Vec<_>>(),
            order,
        )
    }

    /// `log(1 + t)`.
    pub fn log1p(order: usize) -> Self {
        Self::from_scalars(order, |n| match n {
            0 => Rational::zero(),
            _ if n % 2 == 1 => rational(1, n as i64),
            _ => rational(-1, n as i64),
        })
    }

    /// `e^t - 1`.
    pub fn expm1(order: usize) -> Self {
        Self::from_scalars(order, |n| match n {
            0 => Rational::zero(),
            _ => Rational::new(1.into(), factorial(n)),
        })
    }

    /// `F(t, x) = (1 + t)^x / (2 + t)`.
    pub fn changhee_f(order: usize) -> Self {
        Self::shifted_pow(2, -1, order).mul(&Self::binomial_x(order))
    }

    /// `2F(t, x)`, the exponential generating function of the Changhee
    /// polynomials.
    pub fn changhee_2f(order: usize) -> Self {
        Self::changhee_f(order).scale(&integer(2))
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries::from_fn(order, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries::from_fn(order, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}
