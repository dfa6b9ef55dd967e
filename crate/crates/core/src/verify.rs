//! Exact machine checks of the identities tying `F(t, x)`, the coefficient
//! table, and the Euler/Changhee families together.
//!
//! Every check compares exact rationals; a failing check records the first
//! coefficient where the two sides disagree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{binomial_general, factorial, format_rational, integer, pow2, Rational};
use crate::coeffs::{coeff_closed_form, CoeffTable};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::sequences::{
    changhee_polys, changhee_via_stirling, euler_polys, euler_via_stirling, stirling1, stirling2,
};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Location and values of the first mismatch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_power: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_degree: Option<usize>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    identity: String,
    parameters: BTreeMap<String, i64>,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

type Params<'a> = &'a [(&'a str, usize)];

impl Check {
    fn new(identity: &str, params: Params, witness: Option<Witness>) -> Self {
        Self {
            identity: identity.to_string(),
            parameters: params
                .iter()
                .map(|(k, v)| (k.to_string(), *v as i64))
                .collect(),
            status: if witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness,
        }
    }

    pub fn polynomials(
        identity: &str,
        params: Params,
        left: &Polynomial,
        right: &Polynomial,
    ) -> Self {
        let witness = left.first_difference(right).map(|d| Witness {
            t_power: None,
            x_degree: Some(d),
            left: format_rational(&left.coeff(d)),
            right: format_rational(&right.coeff(d)),
        });
        Self::new(identity, params, witness)
    }

    /// Compares up to the smaller of the two orders.
    pub fn series(
        identity: &str,
        params: Params,
        left: &TruncatedSeries,
        right: &TruncatedSeries,
    ) -> Self {
        let witness = left.first_difference(right).map(|(k, d)| Witness {
            t_power: Some(k),
            x_degree: Some(d),
            left: format_rational(&left.coeff(k).coeff(d)),
            right: format_rational(&right.coeff(k).coeff(d)),
        });
        Self::new(identity, params, witness)
    }

    pub fn integers(identity: &str, params: Params, left: &BigInt, right: &BigInt) -> Self {
        let witness = (left != right).then(|| Witness {
            t_power: None,
            x_degree: None,
            left: left.to_string(),
            right: right.to_string(),
        });
        Self::new(identity, params, witness)
    }

    pub fn identity(&self) -> &str {
        &self.identity
    }

    pub fn parameters(&self) -> &BTreeMap<String, i64> {
        &self.parameters
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Ordered list of checks. Serializes as a JSON array of check records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>) -> Self {
        Self { checks }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn append(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per identity with pass/fail counts, in first-seen order.
    pub fn summary(&self) -> String {
        let mut order: Vec<&str> = Vec::new();
        let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for c in &self.checks {
            let e = counts.entry(&c.identity).or_insert_with(|| {
                order.push(&c.identity);
                (0, 0)
            });
            if c.passed() {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        order
            .iter()
            .map(|id| {
                let (pass, fail) = counts[id];
                format!("{id}: {pass} passed, {fail} failed\n")
            })
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

/// Which power of two weights the `(2+t)` expansion in the Changhee
/// expansion formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExponentVariant {
    /// `2^{i-N-m}`, the exponent that reproduces `Ch_{k+N}`.
    #[default]
    Corrected,
    /// `2^{i-N-m+1}`, as the formula is commonly printed; off by a factor 2.
    AsPrinted,
}

impl ExponentVariant {
    pub fn name(self) -> &'static str {
        match self {
            Self::Corrected => "corrected",
            Self::AsPrinted => "printed",
        }
    }
}

/// Checks `(d/dt)^N F = (sum_i a_i(N, x) (1+t)^{-i} (2+t)^{i-N}) F` for every
/// `N <= n_max`, with `a_i` taken from the closed form. Both sides are
/// truncated series compared through order `order - N`.
pub fn verify_derivative_expansion(n_max: usize, order: usize) -> Result<VerificationReport> {
    if order < n_max + 2 {
        return Err(Error::Precondition(format!(
            "order must be at least n_max + 2 (got order={order}, n_max={n_max})"
        )));
    }
    let f = TruncatedSeries::changhee_f(order);
    let checks = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let lhs = f.nth_derivative(n).expect("order > n");
            let mut factor = TruncatedSeries::zero(order);
            for i in 0..=n {
                let a = coeff_closed_form(i, n).expect("i <= n");
                let weights = TruncatedSeries::shifted_pow(1, -(i as i64), order)
                    .mul(&TruncatedSeries::shifted_pow(2, i as i64 - n as i64, order));
                factor = &factor + &weights.scale_poly(&a);
            }
            let rhs = factor.mul(&f).truncate(order - n);
            Check::series(
                "nth_derivative_expansion",
                &[("N", n), ("order", order)],
                &lhs,
                &rhs,
            )
        })
        .collect();
    Ok(VerificationReport::new(checks))
}

/// Checks `k! [t^k] 2 F^{(N)} = Ch_{N+k}(x)` for `N <= n_max`, `k <= k_max`.
pub fn verify_derivative_shift(n_max: usize, k_max: usize) -> VerificationReport {
    let two_f = TruncatedSeries::changhee_2f(n_max + k_max);
    let ch = changhee_polys(n_max + k_max);
    let checks = (0..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            let d = two_f.nth_derivative(n).expect("order >= n");
            let ch = &ch;
            (0..=k_max)
                .map(move |k| {
                    let lhs = d.coeff(k).scale(&Rational::from_integer(factorial(k)));
                    Check::polynomials("derivative_shift", &[("N", n), ("k", k)], &lhs, &ch[n + k])
                })
                .collect::<Vec<_>>()
        })
        .collect();
    VerificationReport::new(checks)
}

/// Right-hand side of
///
/// ```text
/// Ch_{k+N}(x) = k! sum_{i=0}^{N} a_i(N, x) sum_{l+m+p=k} (-1)^{l+m} 2^E / p!
///               * binom(i+l-1, l) binom(N+m-i-1, m) Ch_p(x)
/// ```
///
/// with `a_i(N, x)` from the recurrence table.
pub fn changhee_expansion_rhs(k: usize, n: usize, variant: ExponentVariant) -> Polynomial {
    let table = CoeffTable::recurrence(n);
    changhee_expansion_rhs_from_row(k, table.row(n).expect("row n"), &changhee_polys(k), variant)
}

/// [`changhee_expansion_rhs`] for a caller-supplied row `a_0(N) ..= a_N(N)`
/// and `Ch_0 ..= Ch_k`.
pub fn changhee_expansion_rhs_from_row(
    k: usize,
    row: &[Polynomial],
    changhee: &[Polynomial],
    variant: ExponentVariant,
) -> Polynomial {
    assert!(!row.is_empty() && changhee.len() > k);
    let n = row.len() - 1;
    let shift = match variant {
        ExponentVariant::Corrected => 0,
        ExponentVariant::AsPrinted => 1,
    };
    let mut total = Polynomial::zero();
    for (i, a) in row.iter().enumerate() {
        let mut inner = Polynomial::zero();
        for (p, ch_p) in changhee[..=k].iter().enumerate() {
            let mut weight = Rational::zero();
            for l in 0..=k - p {
                let m = k - p - l;
                let b = binomial_general(i as i64 + l as i64 - 1, l)
                    * binomial_general(n as i64 + m as i64 - i as i64 - 1, m);
                if b.is_zero() {
                    continue;
                }
                let sign = if (l + m).is_multiple_of(2) { 1 } else { -1 };
                let e = i as i64 - n as i64 - m as i64 + shift;
                weight += Rational::from_integer(b * sign) * pow2(e);
            }
            if !weight.is_zero() {
                let w = weight / Rational::from_integer(factorial(p));
                inner += ch_p.scale(&w);
            }
        }
        total += a * &inner;
    }
    total.scale(&Rational::from_integer(factorial(k)))
}

/// For each `(k, N)`: the chosen variant's right-hand side against
/// `Ch_{k+N}`, and the printed variant against twice the corrected one.
pub fn verify_changhee_expansion_pairs(
    pairs: &[(usize, usize)],
    variant: ExponentVariant,
) -> VerificationReport {
    let k_top = pairs.iter().map(|p| p.0).max().unwrap_or(0);
    let n_top = pairs.iter().map(|p| p.1).max().unwrap_or(0);
    let table = CoeffTable::recurrence(n_top);
    let ch = changhee_polys(k_top + n_top);
    let checks = pairs
        .par_iter()
        .flat_map_iter(|&(k, n)| {
            let row = table.row(n).expect("n <= n_top");
            let corrected =
                changhee_expansion_rhs_from_row(k, row, &ch, ExponentVariant::Corrected);
            let printed = changhee_expansion_rhs_from_row(k, row, &ch, ExponentVariant::AsPrinted);
            let chosen = match variant {
                ExponentVariant::Corrected => &corrected,
                ExponentVariant::AsPrinted => &printed,
            };
            let identity = match variant {
                ExponentVariant::Corrected => "changhee_expansion_corrected",
                ExponentVariant::AsPrinted => "changhee_expansion_printed",
            };
            [
                Check::polynomials(identity, &[("N", n), ("k", k)], chosen, &ch[k + n]),
                Check::polynomials(
                    "printed_exponent_is_twice_corrected",
                    &[("N", n), ("k", k)],
                    &printed,
                    &corrected.scale(&integer(2)),
                ),
            ]
        })
        .collect();
    VerificationReport::new(checks)
}

/// All `k <= k_max`, `N <= n_max`, in `(k, N)` lexicographic order.
pub fn verify_changhee_expansion(
    k_max: usize,
    n_max: usize,
    variant: ExponentVariant,
) -> VerificationReport {
    let pairs: Vec<_> = (0..=k_max)
        .flat_map(|k| (0..=n_max).map(move |n| (k, n)))
        .collect();
    verify_changhee_expansion_pairs(&pairs, variant)
}

/// Both Stirling transforms between the Euler and Changhee families and
/// the orthogonality of the two Stirling triangles, for indices `<= n_max`.
pub fn verify_stirling(n_max: usize) -> VerificationReport {
    let ch = changhee_polys(n_max);
    let eu = euler_polys(n_max);
    let mut checks: Vec<Check> = (0..=n_max)
        .into_par_iter()
        .map(|m| {
            Check::polynomials(
                "changhee_via_stirling1",
                &[("m", m)],
                &changhee_via_stirling(m),
                &ch[m],
            )
        })
        .collect();
    checks.par_extend((0..=n_max).into_par_iter().map(|n| {
        Check::polynomials(
            "euler_via_stirling2",
            &[("n", n)],
            &euler_via_stirling(n),
            &eu[n],
        )
    }));
    for n in 0..=n_max {
        for m in 0..=n_max {
            let sum: BigInt = (0..=n.max(m))
                .map(|k| stirling1(n, k) * stirling2(k, m))
                .sum();
            let delta = BigInt::from((n == m) as u8);
            checks.push(Check::integers(
                "stirling_orthogonality",
                &[("m", m), ("n", n)],
                &sum,
                &delta,
            ));
        }
    }
    VerificationReport::new(checks)
}

/// Euler EGF composed with `log(1+t)` against the Changhee EGF, the Changhee
/// EGF composed with `e^t - 1` against the Euler EGF, and the round trip.
pub fn verify_gf_composition(order: usize) -> Result<VerificationReport> {
    if order < 2 {
        return Err(Error::Precondition(format!(
            "composition check needs order >= 2, got {order}"
        )));
    }
    let euler = TruncatedSeries::exponential(&euler_polys(order), order);
    let changhee = TruncatedSeries::exponential(&changhee_polys(order), order);
    let log1p = TruncatedSeries::log1p(order);
    let expm1 = TruncatedSeries::expm1(order);
    let params: Params = &[("order", order)];

    let forward = euler.compose(&log1p)?;
    let backward = changhee.compose(&expm1)?;
    let round_trip = forward.compose(&expm1)?;
    Ok(VerificationReport::new(vec![
        Check::series("euler_gf_after_log1p", params, &forward, &changhee),
        Check::series("changhee_gf_after_expm1", params, &backward, &euler),
        Check::series("log1p_expm1_round_trip", params, &round_trip, &euler),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::falling_factorial_scalar;
    use crate::sequences::changhee_poly;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn derivative_expansion_small() {
        let r = verify_derivative_expansion(3, 12).unwrap();
        assert_eq!(r.checks().len(), 4);
        assert!(r.all_passed(), "{}", r.to_json());
        assert!(verify_derivative_expansion(3, 4).is_err());
        assert!(verify_derivative_expansion(0, 8).unwrap().all_passed());
    }

    #[test]
    fn third_derivative_matches_displayed_form() {
        // (-6(2+t)^-3 + 6x(2+t)^-2(1+t)^-1 + (3x-3x^2)(2+t)^-1(1+t)^-2 + (x)_3 (1+t)^-3) F
        let t = 12;
        let s = TruncatedSeries::shifted_pow;
        let terms = [
            (p("-6"), s(2, -3, t)),
            (p("6x"), s(2, -2, t).mul(&s(1, -1, t))),
            (p("3x - 3x^2"), s(2, -1, t).mul(&s(1, -2, t))),
            (p("x^3 - 3x^2 + 2x"), s(1, -3, t)),
        ];
        let factor = terms.iter().fold(TruncatedSeries::zero(t), |acc, (a, w)| {
            &acc + &w.scale_poly(a)
        });
        let f = TruncatedSeries::changhee_f(t);
        assert_eq!(factor.mul(&f).truncate(t - 3), f.nth_derivative(3).unwrap());
    }

    #[test]
    fn shift_examples() {
        let r = verify_derivative_shift(6, 3);
        assert!(r.all_passed());
        assert_eq!(r.checks().len(), 7 * 4);
        let two_f = TruncatedSeries::changhee_2f(8);
        let d2 = two_f.nth_derivative(2).unwrap();
        assert_eq!(d2.coeff(3).scale(&integer(6)), changhee_poly(5));
        let d6 = two_f.nth_derivative(6).unwrap();
        assert_eq!(d6.coeff(0), &changhee_poly(6));
    }

    #[test]
    fn expansion_rhs_examples() {
        use ExponentVariant::*;
        assert_eq!(changhee_expansion_rhs(0, 1, Corrected), p("x - 1/2"));
        assert_eq!(changhee_expansion_rhs(0, 1, AsPrinted), p("2x - 1"));
        assert_eq!(changhee_expansion_rhs(1, 1, Corrected), p("x^2 - 2x + 1/2"));
        for k in 0..8 {
            assert_eq!(changhee_expansion_rhs(k, 0, Corrected), changhee_poly(k));
        }
        assert_eq!(changhee_expansion_rhs(0, 0, AsPrinted), p("2"));
        assert_eq!(changhee_expansion_rhs(0, 0, Corrected), p("1"));
    }

    #[test]
    fn expansion_grid() {
        let r = verify_changhee_expansion(4, 4, ExponentVariant::Corrected);
        assert_eq!(r.checks().len(), 50);
        assert!(r.all_passed());
    }

    #[test]
    fn printed_variant_fails_with_witness() {
        let r = verify_changhee_expansion(1, 1, ExponentVariant::AsPrinted);
        assert!(!r.all_passed());
        for c in r.failures() {
            assert_eq!(c.identity(), "changhee_expansion_printed");
            let w = c.witness().expect("fail carries witness");
            assert!(w.x_degree.is_some());
            assert_ne!(w.left, w.right);
        }
        assert!(r
            .checks()
            .iter()
            .filter(|c| c.identity() == "printed_exponent_is_twice_corrected")
            .all(Check::passed));
    }

    #[test]
    fn closed_form_row_gives_same_rhs() {
        let table = CoeffTable::recurrence(6);
        let ch = changhee_polys(12);
        for n in 0..=6 {
            let closed: Vec<_> = (0..=n).map(|i| coeff_closed_form(i, n).unwrap()).collect();
            for k in 0..=6 {
                assert_eq!(
                    changhee_expansion_rhs_from_row(
                        k,
                        table.row(n).unwrap(),
                        &ch,
                        ExponentVariant::Corrected
                    ),
                    changhee_expansion_rhs_from_row(k, &closed, &ch, ExponentVariant::Corrected)
                );
            }
        }
    }

    /// Multinomial form: sum_i a_i sum_{l+m+p=k} (-1)^{l+m} 2^E
    /// (k; l, m, p) (i+l-1)_l (N+m-i-1)_m Ch_p.
    fn multinomial_form(k: usize, n: usize, variant: ExponentVariant) -> Polynomial {
        let table = CoeffTable::recurrence(n);
        let shift = (variant == ExponentVariant::AsPrinted) as i64;
        let mut total = Polynomial::zero();
        for i in 0..=n {
            for l in 0..=k {
                for m in 0..=k - l {
                    let pp = k - l - m;
                    let multinomial = factorial(k) / (factorial(l) * factorial(m) * factorial(pp));
                    let ff = falling_factorial_scalar(i as i64 + l as i64 - 1, l)
                        * falling_factorial_scalar(n as i64 + m as i64 - i as i64 - 1, m);
                    let sign = if (l + m).is_multiple_of(2) { 1 } else { -1 };
                    let w = Rational::from_integer(multinomial * ff * sign)
                        * pow2(i as i64 - n as i64 - m as i64 + shift);
                    total += (table.get(n, i).unwrap() * &changhee_poly(pp)).scale(&w);
                }
            }
        }
        total
    }

    #[test]
    fn multinomial_form_agrees() {
        for variant in [ExponentVariant::Corrected, ExponentVariant::AsPrinted] {
            for k in 0..=5 {
                for n in 0..=5 {
                    assert_eq!(
                        multinomial_form(k, n, variant),
                        changhee_expansion_rhs(k, n, variant)
                    );
                }
            }
        }
    }

    #[test]
    fn stirling_suite() {
        let r = verify_stirling(0);
        assert_eq!(r.checks().len(), 3);
        assert!(r.all_passed());
        let r = verify_stirling(6);
        assert!(r.all_passed());
        let find = |n: i64, m: i64| {
            r.checks()
                .iter()
                .find(|c| {
                    c.identity() == "stirling_orthogonality"
                        && c.parameters()["n"] == n
                        && c.parameters()["m"] == m
                })
                .unwrap()
                .clone()
        };
        assert!(find(3, 3).passed() && find(4, 2).passed());
    }

    #[test]
    fn composition_suite() {
        let r = verify_gf_composition(2).unwrap();
        assert!(r.all_passed());
        let euler = TruncatedSeries::exponential(&euler_polys(2), 2);
        let fwd = euler.compose(&TruncatedSeries::log1p(2)).unwrap();
        assert_eq!(fwd.coeff(2), &p("1/2x^2 - x + 1/4"));
        let ch = TruncatedSeries::exponential(&changhee_polys(2), 2);
        let back = ch.compose(&TruncatedSeries::expm1(2)).unwrap();
        assert_eq!(back.coeff(2), &p("1/2x^2 - 1/2x"));
        assert!(verify_gf_composition(1).is_err());
    }

    #[test]
    fn failing_series_check_reports_first_mismatch() {
        let a = TruncatedSeries::changhee_f(4);
        let mut coeffs = a.coeffs().to_vec();
        coeffs[2] = &coeffs[2] + &p("x");
        let b = TruncatedSeries::from_coeffs(4, coeffs);
        let c = Check::series("demo", &[("order", 4)], &a, &b);
        assert_eq!(c.status(), Status::Fail);
        let w = c.witness().unwrap();
        assert_eq!((w.t_power, w.x_degree), (Some(2), Some(1)));
        assert_eq!(w.left, format_rational(&a.coeff(2).coeff(1)));
    }

    #[test]
    fn report_json_is_stable() {
        let a = verify_changhee_expansion(2, 2, ExponentVariant::Corrected).to_json();
        let b = verify_changhee_expansion(2, 2, ExponentVariant::Corrected).to_json();
        assert_eq!(a, b);
        let first = &verify_changhee_expansion(0, 0, ExponentVariant::Corrected);
        assert_eq!(
            serde_json::to_string(first).unwrap(),
            r#"[{"identity":"changhee_expansion_corrected","parameters":{"N":0,"k":0},"status":"pass"},{"identity":"printed_exponent_is_twice_corrected","parameters":{"N":0,"k":0},"status":"pass"}]"#
        );
    }
}
