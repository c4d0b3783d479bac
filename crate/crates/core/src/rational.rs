//! Exact rationals and their text forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `q^e` for any integer exponent.
pub fn pow_q(q: u32, e: i64) -> Rational {
    let base = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// `1 - q^-e`.
pub fn one_minus_inv_pow(q: u32, e: i64) -> Rational {
    Rational::one() - pow_q(q, -e)
}

/// Smallest integer not below `x`.
pub fn ceil(x: &Rational) -> Rational {
    Rational::from_integer(x.ceil().to_integer())
}

/// Parses `a/b`, an integer, or a decimal such as `0.125` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::OutOfRange(format!("cannot parse {s:?} as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, decimals) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && decimals.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(decimals.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{decimals}").parse().map_err(|_| bad())?;
    let value = Rational::new(digits, BigInt::from(10).pow(decimals.len() as u32));
    Ok(if neg { -value } else { value })
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Formats a float with `sig` significant digits, plain notation where
/// reasonable and scientific otherwise.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // a rounding carry can add a digit; that is still within tolerance
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.*e}", sig - 1, x)
    }
}

pub fn is_probability(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

pub(crate) fn ser<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub(crate) fn ser_vec<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_opt<S: Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), frac(1, 8));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), frac(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn display_is_fraction_string() {
        assert_eq!(frac(5, 8).to_string(), "5/8");
        assert_eq!(int(3).to_string(), "3");
        assert_eq!(frac(6, 4).to_string(), "3/2");
    }

    #[test]
    fn powers() {
        assert_eq!(pow_q(2, -3), frac(1, 8));
        assert_eq!(pow_q(3, 2), int(9));
        assert_eq!(one_minus_inv_pow(2, 2), frac(3, 4));
        assert_eq!(ceil(&frac(3, 4)), int(1));
        assert_eq!(ceil(&int(0)), int(0));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(0.625, 12), "0.625");
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(123.456, 4), "123.5");
        assert_eq!(format_sig(2.0f64.powi(-40), 3), "9.09e-13");
    }
}
