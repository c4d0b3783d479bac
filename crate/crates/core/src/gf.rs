//! Finite fields `F_q` with `q = p^m` small enough for full lookup tables.
//!
//! An element is an integer in `0..q` whose base-`p` digits are the
//! coefficients of a polynomial over `F_p` (least significant digit is the
//! constant term). Multiplication reduces modulo the lexicographically least
//! monic irreducible polynomial of degree `m`, so every build picks the same
//! representation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Field element, always in `0..q`.
pub type Elem = u8;

/// Default upper limit on the field order.
pub const DEFAULT_MAX_ORDER: u32 = 16;
/// Hard limit imposed by the `u8` element encoding.
pub const ABSOLUTE_MAX_ORDER: u32 = 256;

struct Tables {
    q: u32,
    p: u32,
    m: u32,
    /// Monic modulus, coefficients from constant term upwards (length `m + 1`).
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field with precomputed arithmetic tables. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // construction is deterministic in q
        self.0.q == other.0.q
    }
}

impl Eq for Field {}

/// Shorthand for [`Field::new`].
pub fn make_field(q: u32) -> Result<Field> {
    Field::new(q)
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        Self::with_max_order(q, DEFAULT_MAX_ORDER)
    }

    /// Builds `F_q` allowing orders up to `limit` (at most 256).
    pub fn with_max_order(q: u32, limit: u32) -> Result<Self> {
        let limit = limit.min(ABSOLUTE_MAX_ORDER);
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > limit {
            return Err(Error::TooLarge { q, limit });
        }
        let modulus = least_irreducible(p, m);
        let qs = q as usize;

        let digits = |mut a: u32| -> Vec<u32> {
            let mut v = vec![0; m as usize];
            for d in v.iter_mut() {
                *d = a % p;
                a /= p;
            }
            v
        };
        let pack = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = pack(&sum) as Elem;
                mul[(a * q + b) as usize] = pack(&poly_mulmod(&da, &db, &modulus, p)) as Elem;
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as Elem;
            }
        }
        Ok(Field(Arc::new(Tables { q, p, m, modulus, add, mul, neg, inv })))
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn contains(&self, a: u32) -> bool {
        a < self.0.q
    }

    pub fn check(&self, a: u32) -> Result<Elem> {
        if self.contains(a) {
            Ok(a as Elem)
        } else {
            Err(Error::InvalidElement { value: a, q: self.0.q })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.0.inv[a as usize])
        }
    }

    /// Inverse of a known-nonzero element.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        self.0.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|a| a as Elem)
    }
}

/// Returns `(p, m)` with `q = p^m` and `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - (lead * c) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(m, 0);
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `code`.
fn monic_from_code(mut code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        v.push(code % p);
        code /= p;
    }
    v.push(1);
    v
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let g = monic_from_code(code, d, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    (0..p.pow(m))
        .map(|code| monic_from_code(code, m, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn supported() -> Vec<u32> {
        (2..=16).filter(|&q| prime_power(q).is_some()).collect()
    }

    #[test]
    fn gf2_is_xor_and() {
        let f = make_field(2).unwrap();
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(f.add(a, b), a ^ b);
                assert_eq!(f.mul(a, b), a & b);
            }
        }
    }

    #[test]
    fn gf4_modulus_and_product() {
        let f = make_field(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf8_uses_x3_x_1() {
        let f = make_field(8).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        // x * x^2 = x^3 = x + 1
        assert_eq!(f.mul(2, 4), 3);
    }

    #[test]
    fn small_prime_arithmetic() {
        let f3 = make_field(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        let f5 = make_field(5).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert_eq!(f5.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(make_field(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(make_field(1).unwrap_err(), Error::NotPrimePower(1));
        assert_eq!(make_field(32).unwrap_err(), Error::TooLarge { q: 32, limit: 16 });
        assert!(Field::with_max_order(32, 64).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in supported() {
            let f = make_field(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for &b in &els {
                    assert!(f.contains(f.add(a, b) as u32));
                    assert!(f.contains(f.mul(a, b) as u32));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in supported() {
            let f = make_field(q).unwrap();
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn nonzero_elements_satisfy_fermat() {
        for q in supported() {
            let f = make_field(q).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, (q - 1) as u64), 1);
            }
        }
    }
}
