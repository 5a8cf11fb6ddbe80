//! Exact rational scalars and their text forms.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator. The canonical text form is `"n"` for
//! integers and `"n/d"` otherwise.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal {0:?}")]
    BadInteger(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^e` for any sign of `e`.
pub fn pow2(e: i32) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Parses `"n"`, `"n/d"` (either sign, surrounding whitespace allowed).
/// Unreduced input such as `"2/4"` is accepted and reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |part: &str| {
        let part = part.trim();
        let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::BadInteger(s.to_string()));
        }
        BigInt::from_str(part).map_err(|_| ParseRationalError::BadInteger(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical `"n"` / `"n/d"` form.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Rounds `r` to `digits` places after the decimal point (half away from
/// zero) and renders it without exponent.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().abs().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let mut mag = q;
    if twice >= *scaled.denom() {
        mag += 1u32;
    }
    let negative = r.is_negative() && !mag.is_zero();
    let (whole, frac) = mag.div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        let frac = frac.to_string();
        out.push('.');
        out.extend(std::iter::repeat_n('0', digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// Number of decimal places needed so that rounding error stays well under
/// `tol`.
pub fn decimal_digits_for(tol: &Rational) -> usize {
    let mut digits = 1;
    let mut scale = Rational::one();
    let ten = int(10);
    while &scale * tol < Rational::one() {
        scale = &scale * &ten;
        digits += 1;
        if digits > 400 {
            break;
        }
    }
    digits
}

pub fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Exact value of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

/// Prefix sums `Σ_{i ≤ k} v_i` for `k = 1..=n`.
pub fn prefix_sums(values: &[Rational]) -> Vec<Rational> {
    let mut acc = Rational::zero();
    values
        .iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect()
}
