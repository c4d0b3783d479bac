//! Linear codes given by a generator matrix.
//!
//! Coordinates are 0-based inside the library. Reports and the text file
//! format use 1-based positions.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::ghw::WeightHierarchy;
use crate::matrix::{rank_gf2_packed, GfMatrix};

/// Default cap on `q^k` for exhaustive codeword enumeration.
pub const DEFAULT_CODEWORD_BUDGET: u128 = 1 << 24;

/// Longest code handled; subsets of coordinates are `u64` masks.
pub const MAX_LENGTH: usize = 64;

/// An `[n, k]_q` linear code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    generator: GfMatrix,
    /// Generator rows as bit masks, GF(2) only.
    packed: Option<Vec<u64>>,
}

impl LinearCode {
    /// Builds a code from generator rows. Rows are stored as given.
    pub fn from_generator<R: AsRef<[u32]>>(field: &Field, rows: &[R]) -> Result<Self> {
        if rows.is_empty() || rows[0].as_ref().is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let generator = GfMatrix::from_rows(field, rows)?;
        Self::from_matrix(generator)
    }

    pub fn from_matrix(generator: GfMatrix) -> Result<Self> {
        let (k, n) = (generator.rows(), generator.cols());
        if k == 0 || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if n > MAX_LENGTH {
            return Err(Error::InvalidParams(format!("length {n} exceeds {MAX_LENGTH}")));
        }
        let rank = generator.rank();
        if rank < k {
            return Err(Error::RankDeficient { rank, rows: k });
        }
        let packed = (generator.field().order() == 2).then(|| generator.pack_gf2());
        Ok(LinearCode { field: generator.field().clone(), n, k, generator, packed })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &GfMatrix {
        &self.generator
    }

    /// `q^k`, saturating.
    pub fn size(&self) -> u128 {
        (self.q() as u128).checked_pow(self.k as u32).unwrap_or(u128::MAX)
    }

    /// Mask with one bit per coordinate.
    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        self.generator.left_mul_vec(message)
    }

    /// Dimension of the zero class `[0]_R`: codewords vanishing outside `R`.
    /// Equals `k - rank(G restricted to the complement of R)`.
    pub fn dim_zero_class(&self, erased: &[usize]) -> Result<usize> {
        let mut mask = 0u64;
        for &i in erased {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, len: self.n });
            }
            mask |= 1 << i;
        }
        Ok(self.dim_zero_class_mask(mask))
    }

    /// [`dim_zero_class`](Self::dim_zero_class) with `R` as a bit mask.
    pub fn dim_zero_class_mask(&self, erased: u64) -> usize {
        let kept = self.full_mask() & !erased;
        if let Some(rows) = &self.packed {
            let mut buf = [0u64; 64];
            for (b, r) in buf.iter_mut().zip(rows) {
                *b = r & kept;
            }
            return self.k - rank_gf2_packed(&buf[..self.k]);
        }
        let cols: Vec<usize> = (0..self.n).filter(|c| kept >> c & 1 == 1).collect();
        let mut data = Vec::with_capacity(self.k * cols.len());
        for r in 0..self.k {
            data.extend(cols.iter().map(|&c| self.generator.get(r, c)));
        }
        self.k - GfMatrix::from_elems(&self.field, self.k, cols.len(), data).rref().rank
    }

    fn check_budget(&self, budget: u128) -> Result<()> {
        let needed = self.size();
        if needed > budget {
            return Err(Error::BudgetExceeded { what: "codeword enumeration", needed, limit: budget });
        }
        Ok(())
    }

    /// Calls `visit(message, codeword)` for every message in base-`q`
    /// counting order (first symbol varies fastest).
    pub fn for_each_codeword<F: FnMut(&[Elem], &[Elem])>(&self, budget: u128, mut visit: F) -> Result<()> {
        self.check_budget(budget)?;
        let q = self.q() as Elem;
        let mut msg = vec![0 as Elem; self.k];
        loop {
            let word = self.encode(&msg);
            visit(&msg, &word);
            let mut i = 0;
            loop {
                if i == self.k {
                    return Ok(());
                }
                msg[i] += 1;
                if msg[i] < q {
                    break;
                }
                msg[i] = 0;
                i += 1;
            }
        }
    }

    pub fn codewords(&self, budget: u128) -> Result<Vec<Vec<Elem>>> {
        let mut out = Vec::new();
        self.for_each_codeword(budget, |_, w| out.push(w.to_vec()))?;
        Ok(out)
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        self.weight_distribution_with_budget(DEFAULT_CODEWORD_BUDGET)
    }

    pub fn weight_distribution_with_budget(&self, budget: u128) -> Result<WeightDistribution> {
        let mut counts = vec![0u64; self.n + 1];
        self.for_each_codeword(budget, |_, w| counts[weight(w)] += 1)?;
        Ok(WeightDistribution(counts))
    }

    /// True when no coordinate is zero in every codeword.
    pub fn is_full_support(&self) -> bool {
        (0..self.n).all(|c| (0..self.k).any(|r| self.generator.get(r, c) != 0))
    }

    /// Singleton defects and separability class from an exact hierarchy.
    pub fn classify(&self, hierarchy: &WeightHierarchy) -> Result<CodeProfile> {
        if hierarchy.len() != self.k {
            return Err(Error::InconsistentInputs(format!(
                "hierarchy has {} entries for k = {}",
                hierarchy.len(),
                self.k
            )));
        }
        let weights = self.weight_distribution()?;
        let d1 = weights.min_distance();
        if d1 != hierarchy.d(1) {
            return Err(Error::InconsistentInputs(format!(
                "d_1 = {} from hierarchy, {d1} from weights",
                hierarchy.d(1)
            )));
        }
        let (n, k) = (self.n as i64, self.k as i64);
        let defects: Vec<i64> = (1..=self.k).map(|i| n - k + i as i64 - hierarchy.d(i) as i64).collect();
        let proper_mds = defects.iter().position(|&s| s == 0).map(|j| j + 1);
        let proper_amds = defects.iter().position(|&s| s == 1).map(|j| j + 1);
        let class = match defects[0] {
            0 => Separability::Mds,
            1 => Separability::Amds,
            _ => match (proper_mds, proper_amds) {
                (Some(j), _) => Separability::ProperMds(j),
                (None, Some(j)) => Separability::ProperAmds(j),
                _ => Separability::Other,
            },
        };
        Ok(CodeProfile {
            weights: weights.0,
            d1,
            singleton_defect: defects[0],
            defects,
            proper_mds_index: proper_mds,
            proper_amds_index: proper_amds,
            class,
            full_support: self.is_full_support(),
        })
    }

    /// Serializes in the text code-file format.
    pub fn to_code_file(&self) -> String {
        let mut s = format!("{} {} {}\n", self.q(), self.n, self.k);
        for r in 0..self.k {
            let row: Vec<String> = self.generator.row(r).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    /// Parses the text code-file format: a `q n k` header followed by `k`
    /// generator rows of `n` integers. `#` starts a comment.
    pub fn parse_code_file(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_nums = |line: usize, l: &str| -> Result<Vec<u32>> {
            l.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse { line, msg: format!("{t:?}: {e}") }))
                .collect()
        };
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let header = parse_nums(hl, header)?;
        let [q, n, k] = header[..] else {
            return Err(Error::Parse { line: hl, msg: "header must be `q n k`".into() });
        };
        let field = Field::new(q)?;
        let mut rows = Vec::with_capacity(k as usize);
        for (line, l) in lines.by_ref().take(k as usize) {
            let row = parse_nums(line, l)?;
            if row.len() != n as usize {
                return Err(Error::Parse { line, msg: format!("expected {n} entries, found {}", row.len()) });
            }
            rows.push(row);
        }
        if rows.len() != k as usize {
            return Err(Error::Parse { line: hl, msg: format!("expected {k} rows, found {}", rows.len()) });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content".into() });
        }
        Self::from_generator(&field, &rows)
    }
}

impl FromStr for LinearCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_code_file(s)
    }
}

pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

pub fn support_mask(word: &[Elem]) -> u64 {
    word.iter().enumerate().fold(0, |m, (i, &x)| if x != 0 { m | 1 << i } else { m })
}

/// Number of codewords of each Hamming weight `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDistribution(pub Vec<u64>);

impl WeightDistribution {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// Least positive weight present; 0 for the zero code.
    pub fn min_distance(&self) -> usize {
        self.0.iter().skip(1).position(|&w| w > 0).map_or(0, |i| i + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "index")]
pub enum Separability {
    #[serde(rename = "MDS")]
    Mds,
    #[serde(rename = "AMDS")]
    Amds,
    #[serde(rename = "proper-MDS")]
    ProperMds(usize),
    #[serde(rename = "proper-AMDS")]
    ProperAmds(usize),
    #[serde(rename = "other")]
    Other,
}

/// Weight distribution, Singleton defects and separability of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeProfile {
    pub weights: Vec<u64>,
    pub d1: usize,
    /// `s(C) = n - k + 1 - d_1`.
    pub singleton_defect: i64,
    /// `s_i(C) = n - k + i - d_i` for `i = 1..=k`.
    pub defects: Vec<i64>,
    /// Least `j` with `s_j = 0`.
    pub proper_mds_index: Option<usize>,
    /// Least `j` with `s_j = 1`.
    pub proper_amds_index: Option<usize>,
    pub class: Separability,
    pub full_support: bool,
}

impl CodeProfile {
    pub fn is_mds(&self) -> bool {
        self.singleton_defect == 0
    }

    pub fn is_amds(&self) -> bool {
        self.singleton_defect == 1
    }
}
