//! Deterministic pseudo-random corpus of small full-support codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::code::LinearCode;
use crate::error::Result;
use crate::gf::make_field;

/// Largest dimension drawn for each field size; keeps subspace enumeration small.
fn max_dimension(q: u32) -> usize {
    match q {
        2 => 6,
        3 => 5,
        _ => 4,
    }
}

#[derive(Debug, Clone)]
pub struct CorpusCode {
    pub name: String,
    pub code: LinearCode,
}

/// `count` random full-rank, full-support codes with `n <= 8` over
/// `q` in `{2, 3, 4}`, reproducible from `seed`.
pub fn random_codes(count: usize, seed: u64) -> Result<Vec<CorpusCode>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [make_field(2)?, make_field(3)?, make_field(4)?];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let f = &fields[rng.random_range(0..fields.len())];
        let q = f.order();
        let n = rng.random_range(2..=8usize);
        let k = rng.random_range(1..=n.min(max_dimension(q)));
        let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.random_range(0..q)).collect()).collect();
        let Ok(code) = LinearCode::from_generator(f, &rows) else { continue };
        if code.is_full_support() {
            out.push(CorpusCode { name: format!("random-{}-q{q}-n{n}-k{k}", out.len()), code });
        }
    }
    Ok(out)
}

/// The standard corpus: `count` random codes followed by every catalog entry.
pub fn standard(count: usize, seed: u64) -> Result<Vec<CorpusCode>> {
    let mut out = random_codes(count, seed)?;
    out.extend(catalog::all()?.into_iter().map(|e| CorpusCode { name: e.name, code: e.code }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_within_limits() {
        let a = random_codes(40, 3).unwrap();
        let b = random_codes(40, 3).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.code.generator(), y.code.generator());
            assert!(x.code.n() <= 8 && x.code.is_full_support());
            assert!([2, 3, 4].contains(&x.code.q()));
        }
        let c = random_codes(40, 4).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.code.generator() != y.code.generator()));
    }
}
