//! Exact arithmetic for Changhee and Euler polynomials, the coefficient
//! functions of the linear differential equations satisfied by
//! `F(t, x) = (1 + t)^x / (2 + t)`, and machine checks of the identities
//! relating them.

pub mod algebra;
pub mod cli;
pub mod coeffs;
pub mod error;
pub mod poly;
pub mod sequences;
pub mod series;
pub mod verify;

pub use algebra::Rational;
pub use coeffs::CoeffTable;
pub use error::{Error, Result};
pub use poly::Polynomial;
pub use series::TruncatedSeries;
pub use verify::VerificationReport;
