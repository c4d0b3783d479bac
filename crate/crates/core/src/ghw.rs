//! Generalized weights: the weight hierarchy, the spectra matrix `A[i][j]`
//! and the support matrix `a[i][r]`.
//!
//! The support matrix counts, for each erasure size `r`, how many `r`-subsets
//! `R` of coordinates leave a zero class `[0]_R` of dimension `i`. It is the
//! only code-dependent factor of the erasure error probability. The spectra
//! matrix counts `i`-dimensional subcodes by the size of their support.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{support_mask, LinearCode};
use crate::combinat::{for_each_subset, gaussian_binomial_u128};
use crate::error::{Error, Result};
use crate::gf::Elem;

/// Default cap on the code length for the `2^n` subset sweep.
pub const DEFAULT_MAX_SUBSET_LENGTH: usize = 24;
/// Default cap on the number of subspaces enumerated per dimension.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 10_000_000;

/// Strictly increasing generalized weights `d_1 < ... < d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeightHierarchy(Vec<usize>);

impl WeightHierarchy {
    pub fn new(d: Vec<usize>) -> Self {
        WeightHierarchy(d)
    }

    /// `d_i` for `i` in `1..=k`.
    pub fn d(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Monotonicity, `1 <= d_1`, and the generalized Singleton bound.
    pub fn is_valid_for(&self, n: usize, k: usize) -> bool {
        self.0.len() == k
            && self.0.first().is_some_and(|&d| d >= 1)
            && self.0.windows(2).all(|w| w[0] < w[1])
            && self.0.iter().enumerate().all(|(i, &d)| d + k <= n + i + 1)
    }
}

/// `a[i][r]` for `i` in `0..=k`, `r` in `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportMatrix {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<Vec<u64>>,
}

impl SupportMatrix {
    pub fn get(&self, i: usize, r: usize) -> u64 {
        self.entries[i][r]
    }

    /// `d_i = min { r : a[i][r] > 0 }`.
    pub fn hierarchy(&self) -> WeightHierarchy {
        WeightHierarchy(
            (1..=self.k).map(|i| self.entries[i].iter().position(|&a| a > 0).expect("row k is nonzero")).collect(),
        )
    }
}

/// `A[i][j]` for `i` in `0..=k`, `j` in `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectraMatrix {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub entries: Vec<Vec<u64>>,
}

impl SpectraMatrix {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    /// `d_i = min { j : A[i][j] > 0 }`.
    pub fn hierarchy(&self) -> WeightHierarchy {
        WeightHierarchy(
            (1..=self.k)
                .map(|i| self.entries[i].iter().position(|&a| a > 0).expect("every dimension occurs"))
                .collect(),
        )
    }
}

pub fn support_matrix(code: &LinearCode) -> Result<SupportMatrix> {
    support_matrix_with_budget(code, DEFAULT_MAX_SUBSET_LENGTH)
}

/// Classifies all `2^n` erasure sets by the dimension of their zero class.
pub fn support_matrix_with_budget(code: &LinearCode, max_len: usize) -> Result<SupportMatrix> {
    let (n, k) = (code.n(), code.k());
    if n > max_len {
        return Err(Error::BudgetExceeded { what: "erasure-set sweep", needed: 1u128 << n, limit: 1u128 << max_len });
    }
    let width = n + 1;
    let flat = (0..1u64 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; (k + 1) * width],
            |mut acc, mask| {
                let i = code.dim_zero_class_mask(mask);
                acc[i * width + mask.count_ones() as usize] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; (k + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(SupportMatrix { n, k, entries: flat.chunks(width).map(<[u64]>::to_vec).collect() })
}

/// Basis of one `i`-dimensional subcode, in message coordinates and as codewords.
pub struct Subcode<'a> {
    pub messages: &'a [Vec<Elem>],
    pub codewords: &'a [Vec<Elem>],
    pub support: u64,
}

fn check_subspace_budget(code: &LinearCode, dim: usize, budget: u128) -> Result<()> {
    let needed = gaussian_binomial_u128(code.k(), dim, code.q());
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "subspace enumeration", needed, limit: budget });
    }
    Ok(())
}

/// Visits every `dim`-dimensional subcode once through its canonical reduced
/// echelon basis in message space, for one choice of pivot columns.
fn visit_pivot_set<F: FnMut(&Subcode<'_>)>(code: &LinearCode, pivots: &[usize], visit: &mut F) {
    let (k, q) = (code.k(), code.q() as usize);
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| (p + 1..k).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let mut digits = vec![0usize; free.len()];
    let mut messages: Vec<Vec<Elem>> = pivots
        .iter()
        .map(|&p| {
            let mut m = vec![0; k];
            m[p] = 1;
            m
        })
        .collect();
    let mut codewords: Vec<Vec<Elem>> = messages.iter().map(|m| code.encode(m)).collect();
    loop {
        let support = codewords.iter().fold(0, |acc, w| acc | support_mask(w));
        visit(&Subcode { messages: &messages, codewords: &codewords, support });
        // advance the free entries like an odometer
        let mut pos = 0;
        loop {
            if pos == free.len() {
                return;
            }
            digits[pos] += 1;
            let carry = digits[pos] == q;
            if carry {
                digits[pos] = 0;
            }
            let (r, c) = free[pos];
            messages[r][c] = digits[pos] as Elem;
            codewords[r] = code.encode(&messages[r]);
            if !carry {
                break;
            }
            pos += 1;
        }
    }
}

/// Calls `visit` once for every subcode of dimension `dim`.
pub fn for_each_subcode<F: FnMut(&Subcode<'_>)>(
    code: &LinearCode,
    dim: usize,
    budget: u128,
    mut visit: F,
) -> Result<()> {
    if dim > code.k() {
        return Err(Error::InvalidIndex(format!("dimension {dim} exceeds k = {}", code.k())));
    }
    check_subspace_budget(code, dim, budget)?;
    for_each_subset(code.k(), dim, |pivots| visit_pivot_set(code, pivots, &mut visit));
    Ok(())
}

pub fn spectra_matrix(code: &LinearCode) -> Result<SpectraMatrix> {
    spectra_matrix_with_budget(code, DEFAULT_SUBSPACE_BUDGET)
}

/// Counts subcodes of every dimension by support size.
pub fn spectra_matrix_with_budget(code: &LinearCode, budget: u128) -> Result<SpectraMatrix> {
    let (n, k) = (code.n(), code.k());
    for dim in 0..=k {
        check_subspace_budget(code, dim, budget)?;
    }
    let mut entries = vec![vec![0u64; n + 1]; k + 1];
    entries[0][0] = 1;
    for (dim, row) in entries.iter_mut().enumerate().skip(1) {
        let mut pivot_sets = Vec::new();
        for_each_subset(k, dim, |p| pivot_sets.push(p.to_vec()));
        *row = pivot_sets
            .par_iter()
            .map(|pivots| {
                let mut counts = vec![0u64; n + 1];
                visit_pivot_set(code, pivots, &mut |s: &Subcode<'_>| counts[s.support.count_ones() as usize] += 1);
                counts
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
    }
    Ok(SpectraMatrix { n, k, q: code.q(), entries })
}

/// Weight hierarchy by subcode enumeration.
pub fn hierarchy(code: &LinearCode) -> Result<WeightHierarchy> {
    Ok(spectra_matrix(code)?.hierarchy())
}

/// Distinct supports of the `i`-dimensional subcodes of minimal support size `d_i`.
pub fn minimal_supports(code: &LinearCode, i: usize, d_i: usize) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for_each_subcode(code, i, DEFAULT_SUBSPACE_BUDGET, |s| {
        if s.support.count_ones() as usize == d_i {
            out.insert(s.support);
        }
    })?;
    Ok(out)
}

/// Number of distinct sets realized as supports of subcodes counted by `A[i][d_i]`.
pub fn count_support_realizers(code: &LinearCode, i: usize, hierarchy: &WeightHierarchy) -> Result<usize> {
    if i == 0 || i > hierarchy.len() {
        return Err(Error::InvalidIndex(format!("dimension {i} outside 1..={}", hierarchy.len())));
    }
    Ok(minimal_supports(code, i, hierarchy.d(i))?.len())
}

/// JSON shape for both matrices.
#[derive(Debug, Clone, Serialize)]
pub struct MatricesDoc {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub hierarchy: Vec<usize>,
    pub spectra: Vec<Vec<u64>>,
    pub support: Vec<Vec<u64>>,
}

impl MatricesDoc {
    pub fn new(code: &LinearCode, spectra: &SpectraMatrix, support: &SupportMatrix) -> Self {
        MatricesDoc {
            n: code.n(),
            k: code.k(),
            q: code.q(),
            hierarchy: spectra.hierarchy().0,
            spectra: spectra.entries.clone(),
            support: support.entries.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;
    use crate::gf::make_field;

    fn binary(rows: &[&[u32]]) -> LinearCode {
        LinearCode::from_generator(&make_field(2).unwrap(), rows).unwrap()
    }

    fn worked_code() -> LinearCode {
        binary(&[&[1, 0, 0], &[0, 1, 1]])
    }

    fn hamming7() -> LinearCode {
        binary(&[&[1, 0, 0, 0, 0, 1, 1], &[0, 1, 0, 0, 1, 0, 1], &[0, 0, 1, 0, 1, 1, 0], &[0, 0, 0, 1, 1, 1, 1]])
    }

    /// Independent oracle: every subset of codewords closed under the code's
    /// linear structure is found by collecting spans of all tuples of codewords.
    fn hierarchy_by_codeword_spans(code: &LinearCode) -> Vec<usize> {
        let words = code.codewords(1 << 16).unwrap();
        let f = code.field();
        let mut best = vec![usize::MAX; code.k() + 1];
        // subspaces as sorted codeword sets, built by adding one generator at a time
        let mut layer: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
        layer.insert(vec![vec![0; code.n()]]);
        for slot in best.iter_mut().skip(1) {
            let mut next = BTreeSet::new();
            for space in &layer {
                for w in &words {
                    if space.contains(w) {
                        continue;
                    }
                    let mut grown: BTreeSet<Vec<Elem>> = BTreeSet::new();
                    for s in space {
                        for c in f.elements() {
                            grown.insert(s.iter().zip(w).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect());
                        }
                    }
                    next.insert(grown.into_iter().collect::<Vec<_>>());
                }
            }
            for space in &next {
                let supp = space.iter().fold(0, |m, w| m | support_mask(w));
                *slot = (*slot).min(supp.count_ones() as usize);
            }
            layer = next;
        }
        best[1..].to_vec()
    }

    #[test]
    fn worked_code_matrices() {
        let c = worked_code();
        let a = support_matrix(&c).unwrap();
        // columns are r, rows are dimension i
        assert_eq!(a.entries, vec![vec![1, 2, 0, 0], vec![0, 1, 3, 0], vec![0, 0, 0, 1]]);
        assert_eq!(a.get(1, 2), 3);
        let s = spectra_matrix(&c).unwrap();
        assert_eq!(s.get(1, 2), 1);
        assert_eq!(s.get(1, 1), 1);
        assert_eq!(s.get(1, 3), 1);
        assert_eq!(s.get(2, 3), 1);
        assert_eq!(s.hierarchy().as_slice(), &[1, 3]);
        assert_eq!(a.hierarchy(), s.hierarchy());
    }

    #[test]
    fn full_space_support_matrix_is_diagonal() {
        let f = make_field(3).unwrap();
        let c = LinearCode::from_generator(&f, &[[1u32, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let a = support_matrix(&c).unwrap();
        for i in 0..=3 {
            for r in 0..=3 {
                assert_eq!(a.get(i, r), if i == r { binomial(3, r) } else { 0 });
            }
        }
    }

    #[test]
    fn repetition_spectra() {
        let f = make_field(3).unwrap();
        let c = LinearCode::from_generator(&f, &[[1u32, 2, 1, 1]]).unwrap();
        let s = spectra_matrix(&c).unwrap();
        assert_eq!(s.entries[1], vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn hierarchies() {
        assert_eq!(hierarchy(&worked_code()).unwrap().as_slice(), &[1, 3]);
        let even = binary(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(hierarchy(&even).unwrap().as_slice(), &[2, 3]);
        assert_eq!(hierarchy_by_codeword_spans(&even), vec![2, 3]);
        let h = hamming7();
        assert_eq!(hierarchy(&h).unwrap().as_slice(), &[3, 5, 6, 7]);
        assert_eq!(hierarchy_by_codeword_spans(&h), vec![3, 5, 6, 7]);
        assert_eq!(support_matrix(&h).unwrap().hierarchy().as_slice(), &[3, 5, 6, 7]);
    }

    #[test]
    fn hierarchy_oracle_nonbinary() {
        let f = make_field(3).unwrap();
        let c = LinearCode::from_generator(&f, &[[1u32, 0, 1, 2, 0], [0, 1, 1, 1, 2]]).unwrap();
        assert_eq!(hierarchy(&c).unwrap().as_slice(), &hierarchy_by_codeword_spans(&c)[..]);
    }

    #[test]
    fn support_realizers() {
        let c = worked_code();
        let h = hierarchy(&c).unwrap();
        assert_eq!(count_support_realizers(&c, 1, &h).unwrap(), 1);
        assert_eq!(count_support_realizers(&c, 2, &h).unwrap(), 1);
        let rep = binary(&[&[1, 1, 1, 1]]);
        assert_eq!(count_support_realizers(&rep, 1, &hierarchy(&rep).unwrap()).unwrap(), 1);
        let even = binary(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(count_support_realizers(&even, 1, &hierarchy(&even).unwrap()).unwrap(), 3);
        assert!(count_support_realizers(&even, 3, &hierarchy(&even).unwrap()).is_err());
    }

    #[test]
    fn spectra_rows_sum_to_gaussian_binomials() {
        let h = hamming7();
        let s = spectra_matrix(&h).unwrap();
        for i in 0..=4 {
            let total: u64 = s.entries[i].iter().sum();
            assert_eq!(total as u128, gaussian_binomial_u128(4, i, 2));
        }
        // one-dimensional binary subcodes are the nonzero codewords
        let w = h.weight_distribution().unwrap();
        for j in 1..=7 {
            assert_eq!(s.get(1, j), w.counts()[j]);
        }
    }

    #[test]
    fn budgets_are_enforced() {
        let h = hamming7();
        assert!(matches!(support_matrix_with_budget(&h, 6), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(spectra_matrix_with_budget(&h, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn hierarchy_validity() {
        assert!(WeightHierarchy::new(vec![3, 5, 6, 7]).is_valid_for(7, 4));
        assert!(!WeightHierarchy::new(vec![3, 3]).is_valid_for(7, 2));
        assert!(!WeightHierarchy::new(vec![7, 8]).is_valid_for(7, 2));
    }

    #[test]
    fn matrices_json_shape() {
        let c = worked_code();
        let doc = MatricesDoc::new(&c, &spectra_matrix(&c).unwrap(), &support_matrix(&c).unwrap());
        let v = serde_json::to_value(&doc).unwrap();
        assert_eq!(v["hierarchy"], serde_json::json!([1, 3]));
        assert_eq!(v["support"][1], serde_json::json!([0, 1, 3, 0]));
        assert_eq!(v["spectra"][1][2], 1);
    }
}
