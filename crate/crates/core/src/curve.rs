//! Probability curves on exact grids and their CSV form.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::erasure::ErrorPolynomial;
use crate::error::{Error, Result};
use crate::rational::{format_sig, is_probability, parse_rational, to_f64, Rational};

/// Significant digits of every float written to CSV.
pub const CSV_DIGITS: usize = 12;

/// Parses `start:stop:step` into the exact points `start, start + step, ...`
/// up to and including `stop` when it is reached.
pub fn parse_grid(text: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(Error::InvalidParams(format!("grid {text:?} is not start:stop:step")));
    };
    let (start, stop, step) = (parse_rational(start)?, parse_rational(stop)?, parse_rational(step)?);
    if !step.is_positive() {
        return Err(Error::InvalidParams("grid step must be positive".into()));
    }
    if !is_probability(&start) || !is_probability(&stop) || start > stop {
        return Err(Error::OutOfRange(format!("grid {text:?} must satisfy 0 <= start <= stop <= 1")));
    }
    let mut out = Vec::new();
    let mut p = start;
    while p <= stop {
        out.push(p.clone());
        p += &step;
    }
    Ok(out)
}

/// One named column of a curve.
pub struct Column<'a> {
    pub name: String,
    pub poly: &'a ErrorPolynomial,
}

/// CSV with a `p` column followed by one column per polynomial, each value an
/// exact evaluation rounded to [`CSV_DIGITS`] significant digits.
pub fn csv(grid: &[Rational], columns: &[Column<'_>]) -> Result<String> {
    let mut out = String::from("p");
    for c in columns {
        let _ = write!(out, ",{}", c.name);
    }
    out.push('\n');
    for p in grid {
        out.push_str(&format_sig(to_f64(p), CSV_DIGITS));
        for c in columns {
            let _ = write!(out, ",{}", format_sig(to_f64(&c.poly.evaluate(p)?), CSV_DIGITS));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Grid intervals `(p_t, p_{t+1})` on which `a - b` changes sign.
pub fn crossings(a: &ErrorPolynomial, b: &ErrorPolynomial, grid: &[Rational]) -> Result<Vec<(Rational, Rational)>> {
    let mut out = Vec::new();
    let mut last: Option<(Rational, Rational)> = None;
    for p in grid {
        let diff = a.evaluate(p)? - b.evaluate(p)?;
        if diff.is_zero() {
            continue;
        }
        if let Some((lp, ld)) = &last {
            if ld.is_positive() != diff.is_positive() {
                out.push((lp.clone(), p.clone()));
            }
        }
        last = Some((p.clone(), diff));
    }
    Ok(out)
}
