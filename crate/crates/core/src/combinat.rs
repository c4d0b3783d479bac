//! Binomial and Gaussian binomial coefficients.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Number of `b`-dimensional subspaces of `F_q^a`; zero when `b > a`.
pub fn gaussian_binomial(a: usize, b: usize, q: u32) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..b {
        num *= q.pow((a - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Gaussian binomial as `u128`, saturating on overflow.
pub fn gaussian_binomial_u128(a: usize, b: usize, q: u32) -> u128 {
    u128::try_from(gaussian_binomial(a, b, q)).unwrap_or(u128::MAX)
}

/// Calls `visit` on every `r`-subset of `0..n` in lexicographic order.
pub fn for_each_subset<F: FnMut(&[usize])>(n: usize, r: usize, mut visit: F) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        visit(&idx);
        let Some(pos) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    /// Counts rank-`b` RREF matrices of size `b x a` over `F_q`.
    fn count_rref(a: usize, b: usize, q: u64) -> u64 {
        let mut total = 0;
        for_each_subset(a, b, |pivots| {
            let free: usize = pivots.iter().map(|&p| (p + 1..a).filter(|c| !pivots.contains(c)).count()).sum();
            total += q.pow(free as u32);
        });
        total
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(count_rref(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(7, 0, 5), BigUint::one());
        assert_eq!(gaussian_binomial(2, 3, 2), BigUint::zero());
        for q in [2u32, 3, 4, 5] {
            for a in 0..6 {
                for b in 0..=a {
                    assert_eq!(gaussian_binomial_u128(a, b, q), count_rref(a, b, q as u64) as u128);
                }
            }
        }
    }

    #[test]
    fn subsets_in_lex_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        for_each_subset(3, 0, |s| {
            assert!(s.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
    }
}
