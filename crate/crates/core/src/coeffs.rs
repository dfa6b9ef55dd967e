//! Coefficient functions `a_i(N, x)` of
//!
//! ```text
//! (d/dt)^N F = ( sum_{i=0}^{N} a_i(N, x) (1+t)^{-i} (2+t)^{i-N} ) F,
//! F(t, x) = (1+t)^x / (2+t).
//! ```
//!
//! Two independent constructions are provided: the row-by-row recurrence
//! seeded only by `a_0(0, x) = 1`, and the closed form as a falling factorial
//! times a nested sum over bounded compositions.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{binomial_general, factorial, integer, Rational};
use crate::error::{Error, Result};
use crate::poly::{falling_factorial_poly, Polynomial};

/// Lower-triangular table: `rows[N][i] = a_i(N, x)` for `0 <= i <= N <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct CoeffTable {
    n_max: usize,
    rows: Vec<Vec<Polynomial>>,
}

#[derive(Deserialize)]
struct RawTable {
    n_max: usize,
    rows: Vec<Vec<Polynomial>>,
}

impl TryFrom<RawTable> for CoeffTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        let shaped = raw.rows.len() == raw.n_max + 1
            && raw.rows.iter().enumerate().all(|(n, r)| r.len() == n + 1);
        if !shaped {
            return Err(Error::Parse("coefficient table is not triangular".into()));
        }
        Ok(Self {
            n_max: raw.n_max,
            rows: raw.rows,
        })
    }
}

impl CoeffTable {
    /// Fills row `N + 1` from row `N`:
    ///
    /// * `a_0(N+1) = -(N+1) a_0(N)`
    /// * `a_i(N+1) = (x+1-i) a_{i-1}(N) + (i-N-1) a_i(N)` for `1 <= i <= N`
    /// * `a_{N+1}(N+1) = (x-N) a_N(N)`
    pub fn recurrence(n_max: usize) -> Self {
        let mut rows: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one()]];
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = Vec::with_capacity(n + 2);
            next.push(prev[0].scale(&integer(-(n as i64 + 1))));
            for i in 1..=n {
                let shifted = prev[i - 1].mul_linear(&integer(i as i64 - 1));
                next.push(shifted + prev[i].scale(&integer(i as i64 - n as i64 - 1)));
            }
            next.push(prev[n].mul_linear(&integer(n)));
            rows.push(next);
        }
        Self { n_max, rows }
    }

    /// Same table, every entry evaluated from [`coeff_closed_form`].
    pub fn closed_form(n_max: usize) -> Self {
        let rows = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|j| coeff_closed_form(j, n).expect("j <= n"))
                    .collect()
            })
            .collect();
        Self { n_max, rows }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `a_i(n, x)`, or `None` outside `0 <= i <= n <= n_max`.
    pub fn get(&self, n: usize, i: usize) -> Option<&Polynomial> {
        self.rows.get(n)?.get(i)
    }

    pub fn row(&self, n: usize) -> Option<&[Polynomial]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    /// Upper-triangular array with `a_i(j, x)` in row `i`, column `j`,
    /// bordered by the indices.
    pub fn to_latex(&self) -> String {
        let n = self.n_max;
        let mut out = format!("\\begin{{array}}{{c|{}}}\n", "c".repeat(n + 1));
        out.push_str(" & ");
        out.push_str(
            &(0..=n)
                .map(|j| j.to_string())
                .collect::<Vec<_>>()
                .join(" & "),
        );
        out.push_str(" \\\\\n\\hline\n");
        for i in 0..=n {
            let cells: Vec<String> = (0..=n)
                .map(|j| {
                    self.get(j, i)
                        .map_or_else(|| "0".to_string(), Polynomial::to_latex)
                })
                .collect();
            out.push_str(&format!("{i} & {} \\\\\n", cells.join(" & ")));
        }
        out.push_str("\\end{array}\n");
        out
    }
}

fn check_nested_args(j: usize, n: usize) -> Result<()> {
    if j < 1 || j > n {
        return Err(Error::IndexOutOfRange(format!(
            "nested sum needs 1 <= j <= N, got j={j}, N={n}"
        )));
    }
    Ok(())
}

/// The nested sum
///
/// ```text
/// sum_{i_{j-1}=0}^{N-j} sum_{i_{j-2}=0}^{N-j-i_{j-1}} ... sum_{i_1} (N - i_{j-1} - ... - i_1 - j + 1)
/// ```
///
/// collapsed by grouping index tuples on their total `s`: there are
/// `binom(s+j-2, j-2)` tuples of `j-1` nonnegative integers summing to `s`.
/// For `j = 1` there are no indices and the value is the bare summand `N`.
pub fn nested_sum(j: usize, n: usize) -> Result<BigInt> {
    check_nested_args(j, n)?;
    let parts = j - 1;
    Ok((0..=n - j)
        .map(|s| {
            let tuples = if parts == 0 {
                BigInt::from((s == 0) as u8)
            } else {
                binomial_general((s + parts - 1) as i64, parts - 1)
            };
            tuples * (n - j + 1 - s)
        })
        .sum())
}

/// [`nested_sum`] by walking every index tuple.
pub fn nested_sum_enumerated(j: usize, n: usize) -> Result<BigInt> {
    check_nested_args(j, n)?;

    fn walk(depth: usize, budget: usize, summand_base: usize) -> BigInt {
        if depth == 0 {
            return BigInt::from(summand_base);
        }
        (0..=budget)
            .map(|i| walk(depth - 1, budget - i, summand_base - i))
            .sum()
    }

    // summand_base tracks N - j + 1 - (indices chosen so far)
    Ok(walk(j - 1, n - j, n - j + 1))
}

/// `a_0(N) = (-1)^N N!` and, for `1 <= j <= N`,
/// `a_j(N) = (x)_j (-1)^{N-j} (N-j)! * nested_sum(j, N)`.
pub fn coeff_closed_form(j: usize, n: usize) -> Result<Polynomial> {
    if j > n {
        return Err(Error::IndexOutOfRange(format!(
            "a_j(N, x) needs j <= N, got j={j}, N={n}"
        )));
    }
    let sign = |e: usize| {
        if e.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    if j == 0 {
        return Ok(Polynomial::from_integer(sign(n) * factorial(n)));
    }
    let scalar = sign(n - j) * factorial(n - j) * nested_sum(j, n)?;
    Ok(falling_factorial_poly(j).scale(&Rational::from_integer(scalar)))
}
