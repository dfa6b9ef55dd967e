//! Dense univariate polynomials in `x` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, integer, parse_rational, Rational};
use crate::error::{Error, Result};

/// Coefficients are stored in ascending degree with no trailing zeros, so
/// the zero polynomial is the empty vector.
///
/// Serializes as a JSON array of rational strings, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::constant(integer(n))
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| integer(c)).collect())
    }

    /// Ascending-degree coefficients, empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x - c` times `self`.
    pub fn mul_linear(&self, c: &Rational) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[k + 1] += a;
            out[k] -= a * c;
        }
        Self::from_coeffs(out)
    }

    /// Index of the first coefficient where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).find(|&k| self.coeff(k) != other.coeff(k))
    }

    pub fn to_latex(&self) -> String {
        render(self, Style::Latex)
    }
}

/// `(x)_n = x (x-1) ... (x-n+1)`, with `(x)_0 = 1`.
pub fn falling_factorial_poly(n: usize) -> Polynomial {
    (0..n).fold(Polynomial::one(), |p, j| p.mul_linear(&integer(j)))
}

#[derive(Clone, Copy)]
enum Style {
    Plain,
    Latex,
}

fn render(p: &Polynomial, style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (deg, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        if deg == 0 || !mag.is_one() {
            out.push_str(&match style {
                Style::Plain => format_rational(&mag),
                Style::Latex if mag.is_integer() => mag.numer().to_string(),
                Style::Latex => format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom()),
            });
        }
        match (deg, style) {
            (0, _) => {}
            (1, _) => out.push('x'),
            (d, Style::Plain) => out.push_str(&format!("x^{d}")),
            (d, Style::Latex) => out.push_str(&format!("x^{{{d}}}")),
        }
    }
    out
}

/// Descending degree, e.g. `x^2 - 2x + 1/2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Style::Plain))
    }
}

/// Parses the human form produced by `Display`.
impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if i > 0 && (ch == '+' || ch == '-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = Polynomial::zero();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coeff, deg) = match body.split_once('x') {
                None => (parse_rational(body)?, 0),
                Some((c, d)) => {
                    let coeff = if c.is_empty() {
                        Rational::one()
                    } else {
                        parse_rational(c)?
                    };
                    let deg = match d {
                        "" => 1,
                        _ => d
                            .strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in `{term}`")))?,
                    };
                    (coeff, deg)
                }
            };
            let coeff = if negative { -coeff } else { coeff };
            let mut coeffs = vec![Rational::zero(); deg + 1];
            coeffs[deg] = coeff;
            acc += Polynomial::from_coeffs(coeffs);
        }
        Ok(acc)
    }
}

impl From<Polynomial> for Vec<String> {
    fn from(p: Polynomial) -> Self {
        p.coeffs.iter().map(format_rational).collect()
    }
}

impl TryFrom<Vec<String>> for Polynomial {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        let coeffs = v
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        *self += &rhs;
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self += &-rhs;
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}
