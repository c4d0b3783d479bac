//! Executable versions of the structural facts about support and spectra
//! matrices, probability coefficients and their bounds. Each function returns
//! the violations it finds; an empty list means the code passed.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::analysis::Analysis;
use crate::code::LinearCode;
use crate::combinat::{binomial, for_each_subset, gaussian_binomial_u128};
use crate::erasure::{singleton_style_bound, ErrorKind};
use crate::error::Result;
use crate::gf::Elem;
use crate::ghw::{for_each_subcode, minimal_supports, DEFAULT_SUBSPACE_BUDGET};
use crate::rational::{int, one_minus_inv_pow, Rational};

/// Largest length for which received words are enumerated explicitly.
pub const RECEIVED_WORD_MAX_LENGTH: usize = 6;
/// Largest code size for which every subcode's codewords are enumerated.
pub const SUBCODE_WORD_MAX_SIZE: u128 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn check(&mut self, ok: bool, check: &'static str, detail: impl FnOnce() -> String) {
        if !ok {
            self.0.push(Violation { check, detail: detail() });
        }
    }
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &c| m | 1 << c)
}

/// Support matrix, spectra matrix, hierarchy and zero-class facts.
pub fn structure_violations(a: &Analysis) -> Result<Vec<Violation>> {
    let (n, k, q) = (a.code.n(), a.code.k(), a.code.q());
    let lam = &a.support;
    let sp = &a.spectra;
    let h = &a.hierarchy;
    let mut c = Collector(Vec::new());

    for r in 0..=n {
        let sum: u64 = (0..=k).map(|i| lam.get(i, r)).sum();
        c.check(sum == binomial(n, r), "column-sums", || format!("column {r} sums to {sum}"));
    }
    c.check(lam.get(0, 0) == 1 && lam.get(k, n) == 1, "corner-entries", || "a[0][0] or a[k][n] is not 1".into());

    c.check(h.is_valid_for(n, k), "hierarchy-shape", || format!("{:?}", h.as_slice()));
    c.check(lam.hierarchy() == *h, "hierarchy-paths-agree", || {
        format!("support matrix gives {:?}, spectra give {:?}", lam.hierarchy().as_slice(), h.as_slice())
    });

    for i in 1..=k {
        let d_i = h.d(i);
        for r in 0..d_i {
            c.check(lam.get(i, r) == 0, "support-zero-below-weight", || format!("a[{i}][{r}] = {}", lam.get(i, r)));
            c.check(sp.get(i, r) == 0, "spectra-zero-below-weight", || format!("A[{i}][{r}] = {}", sp.get(i, r)));
        }
        c.check(lam.get(i, d_i) == sp.get(i, d_i), "diagonal-equals-spectra", || {
            format!("a[{i}][{d_i}] = {} but A[{i}][{d_i}] = {}", lam.get(i, d_i), sp.get(i, d_i))
        });
        for r in (n - k + i + 1)..=n {
            c.check(lam.get(i, r) == 0, "support-zero-above-singleton", || format!("a[{i}][{r}] = {}", lam.get(i, r)));
        }
        for j in 1..i {
            let d_j = h.d(j);
            c.check(lam.get(i, d_j) == 0, "support-zero-at-lower-weights", || {
                format!("a[{i}][d_{j}={d_j}] = {}", lam.get(i, d_j))
            });
        }
        let row: u128 = (0..=n).map(|j| sp.get(i, j) as u128).sum();
        c.check(row == gaussian_binomial_u128(k, i, q), "spectra-row-sums", || format!("row {i} sums to {row}"));
    }
    c.check(sp.get(0, 0) == 1, "spectra-corner", || "A[0][0] is not 1".into());
    for j in 1..=n {
        let w = a.profile.weights[j];
        c.check(sp.get(1, j) * (q as u64 - 1) == w, "lines-match-weights", || {
            format!("A[1][{j}] = {} but W_{j} = {w}", sp.get(1, j))
        });
    }

    if a.profile.full_support && k >= 1 {
        for i in 0..=k {
            let expect = if i + 1 == k { n as u64 } else { 0 };
            c.check(lam.get(i, n - 1) == expect, "second-to-last-column", || {
                format!("a[{i}][{}] = {}, expected {expect}", n - 1, lam.get(i, n - 1))
            });
        }
    }

    // zero-class dimensions over all erasure sets
    let full = a.code.full_mask();
    let dims: Vec<usize> = (0..=full).map(|m| a.code.dim_zero_class_mask(m)).collect();
    for mask in 0..=full {
        let r = mask.count_ones() as i64;
        let i = dims[mask as usize];
        c.check(i as i64 >= k as i64 - n as i64 + r, "zero-class-size-floor", || {
            format!("R = {mask:#b} has dimension {i}")
        });
        for j in 0..n {
            if mask >> j & 1 == 0 {
                let grown = dims[(mask | 1 << j) as usize] as i64;
                let floor = (k as i64 + r + 1 - n as i64).max(i as i64);
                c.check(grown >= floor, "one-more-erasure", || format!("R = {mask:#b}, j = {j}: {grown} < {floor}"));
            }
        }
    }

    // minimal supports have exactly dimension i; other d_i-sets have less
    for i in 1..=k {
        let d_i = h.d(i);
        let minimal = minimal_supports(&a.code, i, d_i)?;
        c.check(minimal.len() as u64 == sp.get(i, d_i), "distinct-minimal-supports", || {
            format!("{} supports for A[{i}][{d_i}] = {}", minimal.len(), sp.get(i, d_i))
        });
        for_each_subset(n, d_i, |set| {
            let m = mask_of(set);
            let dim = dims[m as usize];
            if minimal.contains(&m) {
                c.check(dim == i, "minimal-support-dimension", || {
                    format!("R = {set:?}: dimension {dim}, expected {i}")
                });
            } else {
                c.check(dim < i, "other-set-dimension", || format!("R = {set:?}: dimension {dim} >= {i}"));
            }
        });
    }

    if n <= RECEIVED_WORD_MAX_LENGTH {
        let words = a.code.codewords(a.code.size())?;
        for mask in 0..=full {
            let kept = full & !mask;
            let seen: HashSet<Vec<u8>> = words
                .iter()
                .map(|w| w.iter().enumerate().filter(|(c, _)| kept >> c & 1 == 1).map(|(_, &x)| x).collect())
                .collect();
            let expected = a.code.size() / (q as u128).pow(dims[mask as usize] as u32);
            c.check(seen.len() as u128 == expected, "received-word-count", || {
                format!("R = {mask:#b}: {} received words, expected {expected}", seen.len())
            });
        }
    }

    if a.code.size() <= SUBCODE_WORD_MAX_SIZE {
        for i in 1..=k {
            let mut bad = None;
            for_each_subcode(&a.code, i, DEFAULT_SUBSPACE_BUDGET, |sub| {
                for s in 0..n {
                    let vanishing = count_in_span(&a.code, sub.codewords, |w| w[s] == 0);
                    if vanishing < (q as u64).pow(i as u32 - 1) && bad.is_none() {
                        bad = Some((sub.support, s, vanishing));
                    }
                }
            })?;
            c.check(bad.is_none(), "hyperplane-in-subcode", || format!("dimension {i}: {bad:?}"));
        }
    }

    Ok(c.0)
}

/// Counts the vectors of the span of `basis` that satisfy `pred`, by
/// enumerating all `q^len` combinations.
fn count_in_span(code: &LinearCode, basis: &[Vec<Elem>], pred: impl Fn(&[Elem]) -> bool) -> u64 {
    let (f, n, q) = (code.field(), code.n(), code.q());
    let mut coeffs = vec![0u32; basis.len()];
    let mut count = 0;
    loop {
        let mut word = vec![0 as Elem; n];
        for (b, &cf) in basis.iter().zip(&coeffs) {
            for (x, &y) in word.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(cf as Elem, y));
            }
        }
        count += u64::from(pred(&word));
        let Some(pos) = coeffs.iter().position(|&v| v + 1 < q) else {
            return count;
        };
        for v in &mut coeffs[..pos] {
            *v = 0;
        }
        coeffs[pos] += 1;
    }
}

/// Coefficient-level facts about both probability polynomials.
pub fn coefficient_violations(a: &Analysis) -> Vec<Violation> {
    let n = a.code.n();
    let mut c = Collector(Vec::new());
    for kind in ErrorKind::ALL {
        let poly = a.poly(kind);
        c.check(poly.coeffs[0].is_zero(), "no-error-without-erasures", || format!("{kind}: Q_0 = {}", poly.coeffs[0]));
        for (r, q) in poly.coeffs.iter().enumerate() {
            let cap = int(binomial(n, r) as i64);
            c.check(!(q < &Rational::zero()) && *q <= cap, "coefficient-range", || format!("{kind}: Q_{r} = {q}"));
        }
    }
    for r in 0..=n {
        c.check(a.amb.coeffs[r] >= a.dec.coeffs[r], "ambiguity-dominates", || {
            format!("Q_amb,{r} = {} < Q_dec,{r} = {}", a.amb.coeffs[r], a.dec.coeffs[r])
        });
    }
    let floor = singleton_style_bound(n, a.code.k(), a.code.q());
    for r in 0..=n {
        c.check(a.dec.coeffs[r] >= floor.coeffs[r], "singleton-floor", || {
            format!("Q_dec,{r} = {} < {}", a.dec.coeffs[r], floor.coeffs[r])
        });
    }
    c.0
}

/// Bounds on `Q_{d_i}` and the collapse above the first zero Singleton defect.
pub fn bound_violations(a: &Analysis) -> Result<Vec<Violation>> {
    let (n, k, q) = (a.code.n(), a.code.k(), a.code.q());
    let mut c = Collector(Vec::new());
    let report = a.bounds()?;
    if report.asserted {
        for b in &report.per_index {
            c.check(b.dec_lower <= b.dec_exact, "dec-lower", || {
                format!("i={}: {} > {}", b.i, b.dec_lower, b.dec_exact)
            });
            c.check(b.dec_exact <= b.dec_upper, "dec-upper", || {
                format!("i={}: {} > {}", b.i, b.dec_exact, b.dec_upper)
            });
            if let Some(l) = &b.amb_lower {
                c.check(*l <= b.amb_exact, "amb-lower", || format!("i={}: {l} > {}", b.i, b.amb_exact));
            }
            if let Some(v) = &b.amb_formula {
                c.check(*v == b.amb_exact, "amb-first-weight", || format!("{v} != {}", b.amb_exact));
            }
        }
    }
    if let Some(s) = a.profile.proper_mds_index {
        for r in a.hierarchy.d(s)..=n {
            let dec = int(binomial(n, r) as i64) * one_minus_inv_pow(q, r as i64 + k as i64 - n as i64);
            c.check(a.dec.coeffs[r] == dec, "dec-collapse", || {
                format!("Q_dec,{r} = {}, expected {dec}", a.dec.coeffs[r])
            });
            let amb = int(binomial(n, r) as i64);
            c.check(a.amb.coeffs[r] == amb, "amb-collapse", || {
                format!("Q_amb,{r} = {}, expected {amb}", a.amb.coeffs[r])
            });
        }
    }
    Ok(c.0)
}

/// MDS/AMDS closed forms against the support-matrix polynomials.
pub fn closed_form_violations(a: &Analysis) -> Result<Vec<Violation>> {
    let mut c = Collector(Vec::new());
    for kind in ErrorKind::ALL {
        if let Some(cf) = a.closed_form(kind) {
            let cf = cf?;
            c.check(cf.coeffs == a.poly(kind).coeffs, "closed-form", || {
                format!(
                    "{kind}: closed form {:?} vs exact {:?}",
                    cf.fraction_strings(),
                    a.poly(kind).fraction_strings()
                )
            });
        }
    }
    Ok(c.0)
}

/// Closed-form spectra rows against enumeration.
pub fn han_violations(a: &Analysis) -> Result<Vec<Violation>> {
    let mut c = Collector(Vec::new());
    if let Some(rows) = a.han_rows() {
        let rows = rows?;
        for (off, row) in rows.rows.iter().enumerate() {
            let i = rows.first_row + off;
            for (j, &v) in row.iter().enumerate() {
                c.check(v == a.spectra.get(i, j), "spectra-formula", || {
                    format!("A[{i}][{j}]: formula {v}, enumerated {}", a.spectra.get(i, j))
                });
            }
        }
    }
    Ok(c.0)
}

/// Exact `P_dec` at one point is in `[0, 1]` and below `P_amb`.
pub fn probability_in_range(a: &Analysis, p: &Rational) -> Result<bool> {
    let amb = a.amb.evaluate(p)?;
    let dec = a.dec.evaluate(p)?;
    Ok(dec >= Rational::zero() && dec <= amb && amb <= Rational::one())
}
