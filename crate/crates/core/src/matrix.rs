//! Dense matrices over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of [`GfMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: GfMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl GfMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        GfMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of integers, validating every entry.
    pub fn from_rows<R: AsRef<[u32]>>(field: &Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for &v in row {
                data.push(field.check(v)?);
            }
        }
        Ok(GfMatrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub(crate) fn from_elems(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        GfMatrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        debug_assert!(self.field.contains(v as u32));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(coef, x));
            }
        }
        out
    }

    /// Matrix times column vector: `self * v^T`.
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
    }

    /// Reduced row echelon form. Pivot rows are chosen as the first nonzero
    /// entry scanning top to bottom.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = f.inv_nonzero(m.get(lead, c));
            m.scale_row(lead, inv);
            for r in 0..m.rows {
                let factor = m.get(r, c);
                if r != lead && factor != 0 {
                    m.add_scaled_row(r, lead, f.neg(factor));
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        if self.field.order() == 2 && self.cols <= 64 {
            return rank_gf2_packed(&self.pack_gf2());
        }
        self.rref().rank
    }

    /// Basis of the right null space `{x : self * x^T = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> GfMatrix {
        let f = &self.field;
        let Rref { matrix: r, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = GfMatrix::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.set(b, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(b, pc, f.neg(r.get(pr, fc)));
            }
        }
        basis
    }

    /// Columns `cols` in ascending order.
    pub fn column_submatrix(&self, cols: &[usize]) -> Result<GfMatrix> {
        let mut sorted = cols.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateIndex(w[0]));
            }
        }
        if let Some(&bad) = sorted.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.cols });
        }
        let mut out = GfMatrix::zeros(&self.field, self.rows, sorted.len());
        for r in 0..self.rows {
            for (j, &c) in sorted.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        Ok(out)
    }

    /// Rows as bit masks (bit `c` set iff entry `(r, c)` is 1). GF(2) only.
    pub fn pack_gf2(&self) -> Vec<u64> {
        assert_eq!(self.field.order(), 2);
        assert!(self.cols <= 64);
        (0..self.rows)
            .map(|r| self.row(r).iter().enumerate().fold(0u64, |acc, (c, &v)| acc | ((v as u64) << c)))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: Elem) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row[dst] += s * row[src]
    fn add_scaled_row(&mut self, dst: usize, src: usize, s: Elem) {
        for c in 0..self.cols {
            let v = self.field.add(self.get(dst, c), self.field.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }
}

/// Rank over GF(2) of bit-packed rows.
pub fn rank_gf2_packed(rows: &[u64]) -> usize {
    // xor basis keyed by highest set bit
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut v = row;
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}
