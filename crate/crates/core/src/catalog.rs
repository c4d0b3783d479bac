//! Named codes used as a test corpus and reachable from the CLI.
//!
//! Generator layouts:
//! - `hamming(r)`: reduced kernel basis of the `r x (2^r - 1)` parity-check
//!   matrix whose column `c` is the binary expansion of `c + 1`.
//! - `repetition(n, q)`: the single all-ones row.
//! - `single_parity(n, q)`: `[I_{n-1} | -1]`.
//! - `full_space(n, q)`: `I_n`.
//! - `reed_solomon(n, k, q)`: row `j` evaluates `x^j` at the field elements
//!   `0, 1, ..., n-1` (with `0^0 = 1`).
//! - binary AMDS codes: systematic `[I_k | P]`.

use serde::Serialize;

use crate::code::{LinearCode, Separability};
use crate::error::{Error, Result};
use crate::gf::{make_field, Field};
use crate::ghw::{spectra_matrix, SpectraMatrix};
use crate::matrix::GfMatrix;

pub fn hamming(r: usize) -> Result<LinearCode> {
    if !(2..=6).contains(&r) {
        return Err(Error::InvalidParams(format!("hamming needs 2 <= r <= 6, got {r}")));
    }
    let f = make_field(2)?;
    let n = (1 << r) - 1;
    let h: Vec<Vec<u32>> = (0..r).map(|bit| (1..=n).map(|c| ((c >> bit) & 1) as u32).collect()).collect();
    LinearCode::from_matrix(GfMatrix::from_rows(&f, &h)?.kernel_basis())
}

pub fn repetition(n: usize, q: u32) -> Result<LinearCode> {
    if n == 0 {
        return Err(Error::InvalidParams("repetition needs n >= 1".into()));
    }
    LinearCode::from_generator(&make_field(q)?, &[vec![1u32; n]])
}

pub fn single_parity(n: usize, q: u32) -> Result<LinearCode> {
    if n < 2 {
        return Err(Error::InvalidParams("single parity needs n >= 2".into()));
    }
    let f = make_field(q)?;
    let minus_one = f.neg(1) as u32;
    let rows: Vec<Vec<u32>> = (0..n - 1)
        .map(|i| {
            (0..n)
                .map(|c| {
                    if c == i {
                        1
                    } else if c == n - 1 {
                        minus_one
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    LinearCode::from_generator(&f, &rows)
}

pub fn full_space(n: usize, q: u32) -> Result<LinearCode> {
    if n == 0 {
        return Err(Error::InvalidParams("full space needs n >= 1".into()));
    }
    let f = make_field(q)?;
    LinearCode::from_matrix(GfMatrix::identity(&f, n))
}

pub fn reed_solomon(n: usize, k: usize, q: u32) -> Result<LinearCode> {
    if k == 0 || k > n || n > q as usize {
        return Err(Error::InvalidParams(format!("reed-solomon needs 1 <= k <= n <= q, got n={n} k={k} q={q}")));
    }
    let f = make_field(q)?;
    let rows: Vec<Vec<u32>> = (0..k).map(|j| (0..n).map(|x| f.pow(x as u8, j as u64) as u32).collect()).collect();
    LinearCode::from_generator(&f, &rows)
}

/// `(n, k, A[1][n-k])` of the six binary systematic AMDS codes with minimum
/// distance at least three.
pub const BINARY_AMDS_PARAMS: [(usize, usize, u64); 6] =
    [(5, 2, 2), (6, 2, 3), (6, 3, 4), (7, 3, 7), (7, 4, 7), (8, 4, 14)];

/// Lexicographically least parity parts `P` (rows of `n - k` bits, first
/// entry most significant) found by [`search_binary_amds`].
const BINARY_AMDS_WITNESSES: [&[&[u8]]; 6] = [
    &[&[0, 1, 1], &[1, 0, 1]],
    &[&[0, 1, 1, 1], &[1, 0, 1, 1]],
    &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]],
    &[&[0, 1, 1, 1], &[1, 0, 1, 1], &[1, 1, 0, 1]],
    &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1]],
    &[&[0, 1, 1, 1], &[1, 0, 1, 1], &[1, 1, 0, 1], &[1, 1, 1, 0]],
];

fn systematic(field: &Field, parity: &[Vec<u32>]) -> Result<LinearCode> {
    let k = parity.len();
    let rows: Vec<Vec<u32>> = parity
        .iter()
        .enumerate()
        .map(|(i, p)| (0..k).map(|c| u32::from(c == i)).chain(p.iter().copied()).collect())
        .collect();
    LinearCode::from_generator(field, &rows)
}

/// Exhaustive lexicographic search over binary `[I_k | P]` for a full-support
/// code with minimum distance `n - k` and exactly `a1` codewords of that weight.
pub fn search_binary_amds(n: usize, k: usize, a1: u64) -> Result<LinearCode> {
    let r = n
        .checked_sub(k)
        .filter(|&r| r >= 1 && k >= 1 && k * r <= 24)
        .ok_or_else(|| Error::InvalidParams(format!("search space too large or empty for n={n} k={k}")))?;
    let bits = k * r;
    let full = (1u64 << n) - 1;
    for candidate in 0u64..1 << bits {
        let parity: Vec<u64> = (0..k).map(|i| (candidate >> (bits - (i + 1) * r)) & ((1 << r) - 1)).collect();
        // coordinate c of the codeword sits at bit c
        let rows: Vec<u64> = parity
            .iter()
            .enumerate()
            .map(|(i, &p)| (1u64 << i) | (0..r).fold(0, |m, c| m | (((p >> (r - 1 - c)) & 1) << (k + c))))
            .collect();
        if rows.iter().fold(0, |m, &w| m | w) != full {
            continue;
        }
        let mut min = n as u32 + 1;
        let mut count = 0u64;
        for msg in 1u64..1 << k {
            let word = (0..k).filter(|&i| msg >> i & 1 == 1).fold(0, |w, i| w ^ rows[i]);
            let wt = word.count_ones();
            if wt < min {
                min = wt;
                count = 0;
            }
            if wt == min {
                count += 1;
            }
        }
        if min as usize == r && count == a1 {
            let p: Vec<Vec<u32>> =
                parity.iter().map(|&p| (0..r).map(|c| ((p >> (r - 1 - c)) & 1) as u32).collect()).collect();
            return systematic(&make_field(2)?, &p);
        }
    }
    Err(Error::SearchFailed(format!("no binary systematic [{n},{k}] code with d = {r} and A = {a1}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectraValue {
    pub i: usize,
    pub j: usize,
    pub value: u64,
}

/// What a catalog code is known to satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedProfile {
    pub hierarchy: Vec<usize>,
    pub class: Separability,
    pub spectra: Vec<SpectraValue>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub code: LinearCode,
    pub expected: ExpectedProfile,
}

impl CatalogEntry {
    fn new(
        name: impl Into<String>,
        code: LinearCode,
        hierarchy: &[usize],
        class: Separability,
        spectra: &[(usize, usize, u64)],
    ) -> Self {
        CatalogEntry {
            name: name.into(),
            code,
            expected: ExpectedProfile {
                hierarchy: hierarchy.to_vec(),
                class,
                spectra: spectra.iter().map(|&(i, j, value)| SpectraValue { i, j, value }).collect(),
            },
        }
    }

    /// Recomputes the profile and compares it with the expected one.
    pub fn verify(&self) -> Result<SpectraMatrix> {
        let spectra = spectra_matrix(&self.code)?;
        let hierarchy = spectra.hierarchy();
        let profile = self.code.classify(&hierarchy)?;
        let mismatch = |what: String| Err(Error::InconsistentInputs(format!("{}: {what}", self.name)));
        if hierarchy.as_slice() != self.expected.hierarchy.as_slice() {
            return mismatch(format!("hierarchy {:?}, expected {:?}", hierarchy.as_slice(), self.expected.hierarchy));
        }
        if profile.class != self.expected.class {
            return mismatch(format!("class {:?}, expected {:?}", profile.class, self.expected.class));
        }
        for v in &self.expected.spectra {
            let got = spectra.get(v.i, v.j);
            if got != v.value {
                return mismatch(format!("A[{}][{}] = {got}, expected {}", v.i, v.j, v.value));
            }
        }
        Ok(spectra)
    }

    /// Code file text with the entry name as a leading comment.
    pub fn export(&self) -> String {
        format!("# {}\n{}", self.name, self.code.to_code_file())
    }
}

/// The six binary AMDS codes, in the order of [`BINARY_AMDS_PARAMS`].
pub fn binary_amds_six() -> Result<Vec<CatalogEntry>> {
    let f = make_field(2)?;
    BINARY_AMDS_PARAMS
        .iter()
        .zip(BINARY_AMDS_WITNESSES)
        .map(|(&(n, k, a1), parity)| {
            let p: Vec<Vec<u32>> = parity.iter().map(|row| row.iter().map(|&b| b as u32).collect()).collect();
            let code = systematic(&f, &p)?;
            let hierarchy: Vec<usize> = (1..=k).map(|i| if i == 1 { n - k } else { n - k + i }).collect();
            Ok(CatalogEntry::new(format!("amds-{n}-{k}"), code, &hierarchy, Separability::Amds, &[(1, n - k, a1)]))
        })
        .collect()
}

/// Fixed entries other than the AMDS group.
pub fn classical() -> Result<Vec<CatalogEntry>> {
    use Separability::*;
    let f2 = make_field(2)?;
    Ok(vec![
        CatalogEntry::new(
            "amds-3-2",
            LinearCode::from_generator(&f2, &[[1u32, 0, 0], [0, 1, 1]])?,
            &[1, 3],
            Amds,
            &[(1, 1, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        ),
        CatalogEntry::new("parity-3-2", single_parity(3, 2)?, &[2, 3], Mds, &[(1, 2, 3)]),
        CatalogEntry::new("parity-4-3", single_parity(4, 3)?, &[2, 3, 4], Mds, &[(1, 2, 6)]),
        CatalogEntry::new("repetition-5-2", repetition(5, 2)?, &[5], Mds, &[(1, 5, 1)]),
        CatalogEntry::new("repetition-4-4", repetition(4, 4)?, &[4], Mds, &[(1, 4, 1)]),
        CatalogEntry::new("full-3-3", full_space(3, 3)?, &[1, 2, 3], Mds, &[(1, 1, 3)]),
        CatalogEntry::new("hamming-7-4", hamming(3)?, &[3, 5, 6, 7], Amds, &[(1, 3, 7), (1, 4, 7), (1, 7, 1)]),
        CatalogEntry::new("rs-4-2-5", reed_solomon(4, 2, 5)?, &[3, 4], Mds, &[(1, 3, 4)]),
        CatalogEntry::new("rs-4-2-4", reed_solomon(4, 2, 4)?, &[3, 4], Mds, &[(1, 3, 4)]),
        CatalogEntry::new("rs-5-3-7", reed_solomon(5, 3, 7)?, &[3, 4, 5], Mds, &[(1, 3, 10)]),
    ])
}

/// Every catalog entry: the classical codes followed by the AMDS group.
pub fn all() -> Result<Vec<CatalogEntry>> {
    let mut out = classical()?;
    out.extend(binary_amds_six()?);
    Ok(out)
}

/// Looks up a single entry by name, or the group `amds6`.
pub fn lookup(name: &str) -> Result<Vec<CatalogEntry>> {
    if name == "amds6" {
        return binary_amds_six();
    }
    let found: Vec<CatalogEntry> = all()?.into_iter().filter(|e| e.name == name).collect();
    if found.is_empty() {
        return Err(Error::InvalidParams(format!("no catalog entry named {name:?}")));
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghw::hierarchy;

    #[test]
    fn every_entry_matches_its_profile() {
        for e in all().unwrap() {
            e.verify().unwrap_or_else(|err| panic!("{err}"));
        }
    }

    #[test]
    fn cached_witnesses_are_the_search_results() {
        for (entry, &(n, k, a1)) in binary_amds_six().unwrap().iter().zip(&BINARY_AMDS_PARAMS) {
            let found = search_binary_amds(n, k, a1).unwrap();
            assert_eq!(found.generator(), entry.code.generator(), "{}", entry.name);
        }
    }

    #[test]
    fn amds_six_parameters() {
        let six = binary_amds_six().unwrap();
        assert_eq!(six.len(), 6);
        for (e, &(n, k, a1)) in six.iter().zip(&BINARY_AMDS_PARAMS) {
            assert_eq!((e.code.n(), e.code.k(), e.code.q()), (n, k, 2));
            let w = e.code.weight_distribution().unwrap();
            assert_eq!(w.min_distance(), n - k);
            assert!(n - k >= 3);
            assert_eq!(w.counts()[n - k], a1);
            assert!(e.code.is_full_support());
            // systematic: identity on the first k coordinates
            for i in 0..k {
                for c in 0..k {
                    assert_eq!(e.code.generator().get(i, c), u8::from(i == c));
                }
            }
        }
    }

    #[test]
    fn search_fails_for_impossible_targets() {
        assert!(matches!(search_binary_amds(5, 2, 4), Err(Error::SearchFailed(_))));
        assert!(search_binary_amds(20, 10, 1).is_err());
    }

    #[test]
    fn family_examples() {
        let h = hamming(3).unwrap();
        assert_eq!((h.n(), h.k()), (7, 4));
        assert_eq!(hierarchy(&h).unwrap().as_slice(), &[3, 5, 6, 7]);
        let sp = single_parity(3, 2).unwrap();
        assert_eq!(sp.weight_distribution().unwrap().0, vec![1, 0, 3, 0]);
        let rep = repetition(5, 2).unwrap();
        assert_eq!(rep.weight_distribution().unwrap().min_distance(), 5);
        assert_eq!(reed_solomon(4, 2, 5).unwrap().weight_distribution().unwrap().min_distance(), 3);
        let rs = reed_solomon(3, 3, 3).unwrap();
        assert_eq!(rs.size(), 27);
        assert!(matches!(reed_solomon(4, 2, 3), Err(Error::InvalidParams(_))));
        assert!(matches!(hamming(1), Err(Error::InvalidParams(_))));
        assert!(matches!(single_parity(1, 2), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn lookup_and_export() {
        assert_eq!(lookup("amds6").unwrap().len(), 6);
        let e = &lookup("hamming-7-4").unwrap()[0];
        let back: LinearCode = e.export().parse().unwrap();
        assert_eq!(back.generator(), e.code.generator());
        assert!(lookup("nope").is_err());
    }
}
