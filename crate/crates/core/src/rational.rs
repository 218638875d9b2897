//! Exact rational weights.
//!
//! Lengths, areas and every derived mass are exact rationals so that
//! additivity and optimality checks never depend on a float tolerance.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use num_rational::BigRational as Rational;

/// Rational from an integer.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `p/q` or a bare integer. Signs are allowed on the numerator only.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    if den.starts_with(['+', '-']) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Best-effort conversion for reporting and for the energy functional.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn abs_int_times(weight: &Rational, coeff: i64) -> Rational {
    weight * int(coeff).abs()
}

pub(crate) fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}
