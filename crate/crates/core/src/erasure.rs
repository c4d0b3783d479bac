//! Ambiguity and decoding-error probabilities over the memoryless erasure
//! channel.
//!
//! Both probabilities are polynomials in the erasure probability `p` written
//! in the basis `p^r (1-p)^(n-r)`. Their coefficients `Q_r` come from the
//! support matrix through `Q_r = sum_i a[i][r] * delta_i`, where `delta_i` is
//! the chance that an erasure pattern with an `i`-dimensional zero class is
//! an error: `1 - q^-i` for decoding, `[i > 0]` for ambiguity.
//!
//! Everything here is exact; floats appear only in [`ErrorPolynomial::evaluate_f64`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::code::{CodeProfile, LinearCode};
use crate::combinat::binomial;
pub use crate::combinat::gaussian_binomial;
use crate::error::{Error, Result};
use crate::ghw::{SpectraMatrix, SupportMatrix, WeightHierarchy};
use crate::rational::{self, int, is_probability, one_minus_inv_pow, pow_q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    /// More than one codeword agrees with the received word.
    Amb,
    /// The maximum-likelihood decoder picks the wrong codeword.
    Dec,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 2] = [ErrorKind::Amb, ErrorKind::Dec];
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Amb => "amb",
            ErrorKind::Dec => "dec",
        })
    }
}

impl FromStr for ErrorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "amb" => Ok(ErrorKind::Amb),
            "dec" => Ok(ErrorKind::Dec),
            _ => Err(Error::InvalidParams(format!("unknown error kind {s:?}"))),
        }
    }
}

/// Error contribution of an erasure pattern whose zero class has dimension `i`.
pub fn delta(kind: ErrorKind, i: usize, q: u32) -> Rational {
    let dec = one_minus_inv_pow(q, i as i64);
    match kind {
        ErrorKind::Dec => dec,
        ErrorKind::Amb => rational::ceil(&dec),
    }
}

/// `(delta_0, ..., delta_k)`.
pub fn delta_vector(kind: ErrorKind, k: usize, q: u32) -> Vec<Rational> {
    (0..=k).map(|i| delta(kind, i, q)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    #[serde(rename = "exact-support-matrix")]
    ExactSupport,
    ClosedFormMds,
    ClosedFormAmds,
    BoundLower,
    BoundUpper,
}

/// `P(p) = sum_r Q_r p^r (1-p)^(n-r)` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorPolynomial {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub kind: ErrorKind,
    #[serde(rename = "Q", serialize_with = "rational::ser_vec")]
    pub coeffs: Vec<Rational>,
    pub provenance: Provenance,
}

impl ErrorPolynomial {
    fn zero(n: usize, k: usize, q: u32, kind: ErrorKind, provenance: Provenance) -> Self {
        ErrorPolynomial { n, k, q, kind, coeffs: vec![Rational::zero(); n + 1], provenance }
    }

    pub fn coeff(&self, r: usize) -> &Rational {
        &self.coeffs[r]
    }

    /// Exact value at `p`, which must lie in `[0, 1]`.
    pub fn evaluate(&self, p: &Rational) -> Result<Rational> {
        if !is_probability(p) {
            return Err(Error::OutOfRange(format!("p = {p} is not in [0, 1]")));
        }
        let one_minus = Rational::one() - p;
        let mut p_pow = vec![Rational::one(); self.n + 1];
        let mut c_pow = vec![Rational::one(); self.n + 1];
        for r in 1..=self.n {
            p_pow[r] = &p_pow[r - 1] * p;
            c_pow[r] = &c_pow[r - 1] * &one_minus;
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| c * &p_pow[r] * &c_pow[self.n - r])
            .sum())
    }

    /// Floating-point evaluation for plotting; approximate.
    pub fn evaluate_f64(&self, p: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(r, c)| rational::to_f64(c) * p.powi(r as i32) * (1.0 - p).powi((self.n - r) as i32))
            .sum()
    }

    /// Index of the first nonzero coefficient.
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn fraction_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    fn same_shape(&self, other: &Self) -> bool {
        (self.n, self.k, self.q, self.kind) == (other.n, other.k, other.q, other.kind)
    }
}

/// `Q_r = sum_i a[i][r] * delta_i` for every `r`.
pub fn q_vector(support: &SupportMatrix, q: u32, kind: ErrorKind) -> ErrorPolynomial {
    let deltas = delta_vector(kind, support.k, q);
    let mut poly = ErrorPolynomial::zero(support.n, support.k, q, kind, Provenance::ExactSupport);
    for (r, coeff) in poly.coeffs.iter_mut().enumerate() {
        *coeff = deltas.iter().enumerate().map(|(i, d)| d * int(support.get(i, r) as i64)).sum();
    }
    poly
}

/// Exact `P(p)`.
pub fn error_probability(poly: &ErrorPolynomial, p: &Rational) -> Result<Rational> {
    poly.evaluate(p)
}

/// Bounds on `Q_{d_i}` for one dimension `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexBounds {
    pub i: usize,
    pub d_i: usize,
    /// `A[i][d_i]`.
    pub spectra: u64,
    #[serde(serialize_with = "rational::ser")]
    pub dec_lower: Rational,
    #[serde(serialize_with = "rational::ser")]
    pub dec_upper: Rational,
    #[serde(serialize_with = "rational::ser")]
    pub dec_exact: Rational,
    /// Present for `i >= 2`.
    #[serde(serialize_with = "rational::ser_opt")]
    pub amb_lower: Option<Rational>,
    /// `Q_amb,d_1 = A[1][d_1]`, present for `i = 1`.
    #[serde(serialize_with = "rational::ser_opt")]
    pub amb_formula: Option<Rational>,
    #[serde(serialize_with = "rational::ser")]
    pub amb_exact: Rational,
    /// Lower and upper decoding bounds coincide.
    pub degenerate: bool,
}

impl IndexBounds {
    pub fn holds(&self) -> bool {
        self.dec_lower <= self.dec_exact
            && self.dec_exact <= self.dec_upper
            && self.amb_lower.as_ref().is_none_or(|l| *l <= self.amb_exact)
            && self.amb_formula.as_ref().is_none_or(|v| *v == self.amb_exact)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub per_index: Vec<IndexBounds>,
    /// False when the code has an identically zero coordinate; the bounds are
    /// computed but not guaranteed in that case.
    pub asserted: bool,
    pub singleton: ErrorPolynomial,
    pub liva_improved: ErrorPolynomial,
    pub liva_original: ErrorPolynomial,
}

/// `max{1, q^e}`.
fn max_one_pow(q: u32, e: i64) -> Rational {
    if e <= 0 {
        Rational::one()
    } else {
        pow_q(q, e)
    }
}

/// Lower bound on `Q_dec,d_i`.
pub fn dec_lower_bound(n: usize, k: usize, q: u32, i: usize, d_i: usize, a: u64) -> Rational {
    let a = int(a as i64);
    let rest = int(binomial(n, d_i) as i64) - &a;
    let floor = max_one_pow(q, k as i64 - n as i64 + d_i as i64);
    a * one_minus_inv_pow(q, i as i64) + rest * (Rational::one() - floor.recip())
}

/// Upper bound on `Q_dec,d_i`.
pub fn dec_upper_bound(n: usize, q: u32, i: usize, d_i: usize, a: u64) -> Rational {
    int(a as i64) * int(q as i64 - 1) * pow_q(q, -(i as i64))
        + int(binomial(n, d_i) as i64) * one_minus_inv_pow(q, i as i64 - 1)
}

/// Lower bound on `Q_amb,d_i`, meaningful for `i >= 2`.
pub fn amb_lower_bound(n: usize, k: usize, q: u32, d_i: usize, a: u64) -> Rational {
    let a = int(a as i64);
    let rest = int(binomial(n, d_i) as i64) - &a;
    let floor = max_one_pow(q, k as i64 - n as i64 + d_i as i64);
    a + rest * rational::ceil(&(Rational::one() - floor.recip()))
}

pub fn bounds_report(
    code: &LinearCode,
    support: &SupportMatrix,
    spectra: &SpectraMatrix,
    hierarchy: &WeightHierarchy,
    profile: &CodeProfile,
) -> Result<BoundsReport> {
    let (n, k, q) = (code.n(), code.k(), code.q());
    if (support.n, support.k) != (n, k) || (spectra.n, spectra.k) != (n, k) || hierarchy.len() != k {
        return Err(Error::InconsistentInputs("inputs describe different codes".into()));
    }
    let amb = q_vector(support, q, ErrorKind::Amb);
    let dec = q_vector(support, q, ErrorKind::Dec);
    let per_index = (1..=k)
        .map(|i| {
            let d_i = hierarchy.d(i);
            let a = spectra.get(i, d_i);
            let dec_lower = dec_lower_bound(n, k, q, i, d_i, a);
            let dec_upper = dec_upper_bound(n, q, i, d_i, a);
            IndexBounds {
                i,
                d_i,
                spectra: a,
                degenerate: dec_lower == dec_upper,
                dec_lower,
                dec_upper,
                dec_exact: dec.coeff(d_i).clone(),
                amb_lower: (i >= 2).then(|| amb_lower_bound(n, k, q, d_i, a)),
                amb_formula: (i == 1).then(|| int(a as i64)),
                amb_exact: amb.coeff(d_i).clone(),
            }
        })
        .collect();
    Ok(BoundsReport {
        per_index,
        asserted: profile.full_support,
        singleton: singleton_style_bound(n, k, q),
        liva_improved: liva_bound(
            n,
            k,
            q,
            &profile.weights,
            profile.proper_mds_index,
            profile.d1,
            LivaVariant::Improved,
        ),
        liva_original: liva_bound(
            n,
            k,
            q,
            &profile.weights,
            profile.proper_mds_index,
            profile.d1,
            LivaVariant::Original,
        ),
    })
}

/// Spectra rows `i >= s` predicted for a code whose first zero Singleton
/// defect is at index `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSpectra {
    pub first_row: usize,
    pub rows: Vec<Vec<u64>>,
}

impl PartialSpectra {
    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        i.checked_sub(self.first_row).and_then(|r| self.rows.get(r)).map(|row| row[j])
    }
}

/// Number of `i`-dimensional subcodes with support exactly `r`, assuming
/// `d_i = n - k + i` for this `i`. Zero for `r < d_i`.
pub fn han_value(n: usize, k: usize, q: u32, i: usize, r: usize) -> BigInt {
    let d_i = n - k + i;
    if r < d_i || r > n {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for t in 0..=r - d_i {
        let term = BigInt::from(binomial(r, t)) * BigInt::from(gaussian_binomial(r + i - d_i - t, i, q));
        if t % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum * BigInt::from(binomial(n, r))
}

/// Closed-form spectra rows `s..=k`.
pub fn han_spectra(n: usize, k: usize, q: u32, s: usize) -> Result<PartialSpectra> {
    if k == 0 || k > n || s == 0 || s > k {
        return Err(Error::InvalidIndex(format!("need 1 <= s <= k <= n, got s={s} k={k} n={n}")));
    }
    let rows = (s..=k)
        .map(|i| {
            (0..=n)
                .map(|r| {
                    let v = han_value(n, k, q, i, r);
                    u64::try_from(&v)
                        .map_err(|_| Error::InconsistentInputs(format!("formula gives {v} at i={i}, r={r}")))
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(PartialSpectra { first_row: s, rows })
}

/// Error polynomial of any MDS `[n, k]_q` code.
pub fn mds_closed_form(n: usize, k: usize, q: u32, kind: ErrorKind) -> ErrorPolynomial {
    let mut poly = ErrorPolynomial::zero(n, k, q, kind, Provenance::ClosedFormMds);
    for r in n - k + 1..=n {
        let c = int(binomial(n, r) as i64);
        poly.coeffs[r] = match kind {
            ErrorKind::Amb => c,
            ErrorKind::Dec => c * one_minus_inv_pow(q, (r + k - n) as i64),
        };
    }
    poly
}

/// Spectra values that determine an AMDS code's error polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmdsInputs {
    /// `A[1][n-k]`.
    pub a1: u64,
    /// Least index with zero Singleton defect, or `k + 1` if there is none.
    pub s: usize,
    /// `A[i+1][n-k+i]` for `i = 0..=s-2`; the first entry equals `a1`.
    pub higher: Vec<u64>,
}

impl AmdsInputs {
    pub fn from_spectra(spectra: &SpectraMatrix, profile: &CodeProfile) -> Result<Self> {
        let (n, k) = (spectra.n, spectra.k);
        if !profile.is_amds() {
            return Err(Error::InconsistentInputs("code is not AMDS".into()));
        }
        let s = profile.proper_mds_index.unwrap_or(k + 1);
        Ok(AmdsInputs {
            a1: spectra.get(1, n - k),
            s,
            higher: (0..s - 1).map(|i| spectra.get(i + 1, n - k + i)).collect(),
        })
    }
}

/// Error polynomial of an AMDS `[n, k]_q` code from its few free spectra values.
pub fn amds_closed_form(n: usize, k: usize, q: u32, inputs: &AmdsInputs, kind: ErrorKind) -> Result<ErrorPolynomial> {
    let AmdsInputs { a1, s, higher } = inputs;
    let (a1, s) = (*a1, *s);
    if a1 == 0 {
        return Err(Error::InconsistentInputs("A[1][n-k] must be positive".into()));
    }
    if k == 0 || k >= n || !(2..=k + 1).contains(&s) {
        return Err(Error::InconsistentInputs(format!("need 1 <= k < n and 2 <= s <= k+1, got k={k} s={s}")));
    }
    if higher.len() != s - 1 || higher[0] != a1 {
        return Err(Error::InconsistentInputs(format!(
            "expected {} higher spectra values starting with A[1][n-k]",
            s - 1
        )));
    }
    let base = n - k;
    let mut poly = ErrorPolynomial::zero(n, k, q, kind, Provenance::ClosedFormAmds);
    match kind {
        ErrorKind::Amb => {
            poly.coeffs[base] = int(a1 as i64);
            for i in 1..=k {
                poly.coeffs[base + i] = int(binomial(n, base + i) as i64);
            }
        }
        ErrorKind::Dec => {
            for (i, &a) in higher.iter().enumerate() {
                poly.coeffs[base + i] += int(a as i64) * int(q as i64 - 1) * pow_q(q, -(i as i64 + 1));
            }
            for i in 0..=k {
                poly.coeffs[base + i] += int(binomial(n, base + i) as i64) * one_minus_inv_pow(q, i as i64);
            }
        }
    }
    Ok(poly)
}

/// The MDS decoding polynomial, which bounds every `[n, k]_q` code's
/// decoding error from below coefficientwise.
pub fn singleton_style_bound(n: usize, k: usize, q: u32) -> ErrorPolynomial {
    ErrorPolynomial { provenance: Provenance::BoundLower, ..mds_closed_form(n, k, q, ErrorKind::Dec) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LivaVariant {
    /// Correction terms for `i = 1..=n-k`.
    Original,
    /// Correction terms for `i = d_1..=min(d_s, n-k)`.
    Improved,
}

/// Weight-distribution upper bound on the decoding error: the Singleton-style
/// polynomial plus union-bound correction terms for small erasure counts.
pub fn liva_bound(
    n: usize,
    k: usize,
    q: u32,
    weights: &[u64],
    s: Option<usize>,
    d1: usize,
    variant: LivaVariant,
) -> ErrorPolynomial {
    let mut poly = ErrorPolynomial { provenance: Provenance::BoundUpper, ..singleton_style_bound(n, k, q) };
    let range = match variant {
        LivaVariant::Original => 1..=n - k,
        LivaVariant::Improved => {
            let d_s = s.map_or(n - k, |s| n - k + s);
            d1.max(1)..=d_s.min(n - k)
        }
    };
    let qm1 = int(q as i64 - 1);
    for i in range {
        let inner: Rational = (1..=i)
            .map(|j| {
                let a1 = int(weights[j] as i64) / &qm1;
                int(binomial(i, j) as i64) * a1 / int(binomial(n, j) as i64)
            })
            .sum::<Rational>()
            / &qm1;
        let factor = if inner > Rational::one() { Rational::one() } else { inner };
        poly.coeffs[i] += int(binomial(n, i) as i64) * factor;
    }
    poly
}

/// Pointwise upper bound via the wrapper used in reports.
pub fn liva_improved_bound(code: &LinearCode, profile: &CodeProfile) -> ErrorPolynomial {
    liva_bound(
        code.n(),
        code.k(),
        code.q(),
        &profile.weights,
        profile.proper_mds_index,
        profile.d1,
        LivaVariant::Improved,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The first code has the smaller error probability for all small `p > 0`.
    First,
    Second,
    /// All coefficients agree.
    TieAtPrefix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComparisonRule {
    /// Larger minimum distance wins.
    MinimumDistance,
    /// Equal minimum distance, smaller `Q_{d_1}` (equivalently smaller
    /// `A[1][d_1]`) wins.
    LeadingCoefficient,
    /// First differing later coefficient decides; goes beyond the two rules above.
    LexicographicExtension,
    Identical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallPComparison {
    pub verdict: Verdict,
    pub rule: ComparisonRule,
    /// Erasure count whose coefficient decided the comparison.
    pub decided_at: Option<usize>,
    pub d1: (usize, usize),
}

/// Orders two same-parameter codes by their error probability as `p -> 0`.
///
/// `P(p) / (1-p)^n` is a polynomial in `x = p / (1-p)` with coefficients
/// `Q_r`, so the first differing coefficient decides.
pub fn compare_small_p(first: &ErrorPolynomial, second: &ErrorPolynomial) -> Result<SmallPComparison> {
    if !first.same_shape(second) {
        return Err(Error::MismatchedParameters(format!(
            "[{},{}]_{} {} vs [{},{}]_{} {}",
            first.n, first.k, first.q, first.kind, second.n, second.k, second.q, second.kind
        )));
    }
    let d1 = (first.leading_index().unwrap_or(0), second.leading_index().unwrap_or(0));
    let Some(r) = (0..=first.n).find(|&r| first.coeffs[r] != second.coeffs[r]) else {
        return Ok(SmallPComparison {
            verdict: Verdict::TieAtPrefix,
            rule: ComparisonRule::Identical,
            decided_at: None,
            d1,
        });
    };
    let verdict = if first.coeffs[r] < second.coeffs[r] { Verdict::First } else { Verdict::Second };
    let rule = if d1.0 != d1.1 {
        ComparisonRule::MinimumDistance
    } else if r == d1.0 {
        ComparisonRule::LeadingCoefficient
    } else {
        ComparisonRule::LexicographicExtension
    };
    Ok(SmallPComparison { verdict, rule, decided_at: Some(r), d1 })
}

/// Coefficientwise difference, used for reporting slack between polynomials.
pub fn coefficient_gap(upper: &ErrorPolynomial, lower: &ErrorPolynomial) -> Vec<BigRational> {
    upper.coeffs.iter().zip(&lower.coeffs).map(|(a, b)| a - b).collect()
}

/// True when every coefficient of `lower` is at most that of `upper`.
pub fn dominated(lower: &ErrorPolynomial, upper: &ErrorPolynomial) -> bool {
    coefficient_gap(upper, lower).iter().all(|g| !g.is_negative())
}
