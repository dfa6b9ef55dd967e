//! Stirling numbers, Euler polynomials and Changhee polynomials, each built
//! from its own recurrence without going through power series.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{integer, rational, Rational};
use crate::poly::{falling_factorial_poly, Polynomial};

/// Rows of a number triangle, grown on demand. Readers see either a short
/// table or fully computed rows.
struct Triangle {
    rows: RwLock<Vec<Vec<BigInt>>>,
    next_row: fn(n: usize, prev: &[BigInt]) -> Vec<BigInt>,
}

impl Triangle {
    fn new(next_row: fn(usize, &[BigInt]) -> Vec<BigInt>) -> Self {
        Self {
            rows: RwLock::new(vec![vec![BigInt::from(1)]]),
            next_row,
        }
    }

    fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        {
            let rows = self.rows.read().unwrap_or_else(|e| e.into_inner());
            if let Some(row) = rows.get(n) {
                return row[k].clone();
            }
        }
        let mut rows = self.rows.write().unwrap_or_else(|e| e.into_inner());
        while rows.len() <= n {
            let m = rows.len() - 1;
            let row = (self.next_row)(m, &rows[m]);
            rows.push(row);
        }
        rows[n][k].clone()
    }
}

fn entry(row: &[BigInt], k: Option<usize>) -> BigInt {
    k.and_then(|k| row.get(k).cloned()).unwrap_or_default()
}

// S1(n+1, k) = S1(n, k-1) - n S1(n, k)
fn stirling1_row(n: usize, prev: &[BigInt]) -> Vec<BigInt> {
    (0..=n + 1)
        .map(|k| entry(prev, k.checked_sub(1)) - entry(prev, Some(k)) * n)
        .collect()
}

// S2(n+1, k) = k S2(n, k) + S2(n, k-1)
fn stirling2_row(n: usize, prev: &[BigInt]) -> Vec<BigInt> {
    (0..=n + 1)
        .map(|k| entry(prev, Some(k)) * k + entry(prev, k.checked_sub(1)))
        .collect()
}

static STIRLING1: OnceLock<Triangle> = OnceLock::new();
static STIRLING2: OnceLock<Triangle> = OnceLock::new();

/// Signed Stirling number of the first kind: the coefficient of `x^k` in
/// `(x)_n`. Zero when `k > n`.
pub fn stirling1(n: usize, k: usize) -> BigInt {
    STIRLING1
        .get_or_init(|| Triangle::new(stirling1_row))
        .get(n, k)
}

/// Stirling number of the second kind: the number of partitions of an
/// `n`-set into `k` nonempty blocks.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    STIRLING2
        .get_or_init(|| Triangle::new(stirling2_row))
        .get(n, k)
}

/// `E_0 ..= E_n`.
///
/// Clearing the denominator of `2 e^{xt} / (e^t + 1)` gives
/// `E_n = x^n - 1/2 sum_{k<n} binom(n, k) E_k`.
pub fn euler_polys(n: usize) -> Vec<Polynomial> {
    let half = rational(1, 2);
    let mut out: Vec<Polynomial> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut monomial = vec![Rational::zero(); m + 1];
        monomial[m] = integer(1);
        let mut acc = Polynomial::zero();
        let mut binom = BigInt::from(1);
        for (k, e) in out.iter().enumerate() {
            acc += e.scale(&Rational::from_integer(binom.clone()));
            binom = binom * (m - k) / (k + 1);
        }
        out.push(Polynomial::from_coeffs(monomial) - acc.scale(&half));
    }
    out
}

pub fn euler_poly(n: usize) -> Polynomial {
    euler_polys(n).pop().expect("at least E_0")
}

/// `Ch_0 ..= Ch_n`.
///
/// From `(2 + t) sum Ch_n t^n / n! = 2 (1 + t)^x`:
/// `Ch_n = (x)_n - n/2 Ch_{n-1}`.
pub fn changhee_polys(n: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one()];
    for m in 1..=n {
        let prev = out[m - 1].scale(&rational(m as i64, 2));
        out.push(falling_factorial_poly(m) - prev);
    }
    out
}

pub fn changhee_poly(n: usize) -> Polynomial {
    changhee_polys(n).pop().expect("at least Ch_0")
}

/// `sum_{n<=m} E_n(x) S1(m, n)`.
pub fn changhee_via_stirling(m: usize) -> Polynomial {
    euler_polys(m)
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (n, e)| {
            acc + e.scale(&Rational::from_integer(stirling1(m, n)))
        })
}

/// `sum_{m<=n} Ch_m(x) S2(n, m)`.
pub fn euler_via_stirling(n: usize) -> Polynomial {
    changhee_polys(n)
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (m, c)| {
            acc + c.scale(&Rational::from_integer(stirling2(n, m)))
        })
}
