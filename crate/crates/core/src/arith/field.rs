//! Finite fields `F_q` with `q = p^e`, elements encoded as integers `0..q`.
//!
//! For `e = 1` the encoding is the residue mod `p`. For `e > 1` an element is
//! the base-`p` digit vector of a polynomial over `F_p` reduced modulo a fixed
//! monic irreducible of degree `e`; the class of `X` (encoded as `p`) is the
//! generator `a` used by the literal grammar.
//!
//! Fields are interned: [`Field::get`] returns a `&'static Field` so that
//! polynomials can carry their field by reference.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::ArithError;

/// Largest supported field size; all operation tables are precomputed.
pub const MAX_Q: u32 = 256;

pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    /// Monic irreducible modulus over `F_p` (low to high), length `e + 1`.
    modulus: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for Field {}

fn registry() -> &'static Mutex<HashMap<u32, &'static Field>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Digit vectors of length `e` over `F_p`.
fn digits(x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(e as usize);
    let mut x = x;
    for _ in 0..e {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiply two digit vectors modulo the monic modulus over `F_p`.
fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (e..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for (k, &m) in modulus.iter().enumerate() {
                let idx = d - e + k;
                prod[idx] = (prod[idx] + p * p - c * m % p) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

/// Smallest (in encoding order) monic irreducible of degree `e` over `F_p`.
fn find_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = p.pow(e);
    'cand: for low in 0..count {
        let mut m = digits(low, p, e);
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        // Irreducible iff no monic factor of degree 1..=e/2; test by trial division.
        for d in 1..=e / 2 {
            for f_low in 0..p.pow(d) {
                let mut f = digits(f_low, p, d);
                f.push(1);
                if divides_fp(&f, &m, p) {
                    continue 'cand;
                }
            }
        }
        return m;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn divides_fp(f: &[u32], g: &[u32], p: u32) -> bool {
    let mut r = g.to_vec();
    let df = f.len() - 1;
    while r.len() > df {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        for (k, &fk) in f.iter().enumerate() {
            r[shift + k] = (r[shift + k] + p * p - c * fk % p) % p;
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r.is_empty()
}

impl Field {
    /// The interned field with `q` elements.
    pub fn get(q: u32) -> Result<&'static Field, ArithError> {
        let (p, e) = prime_power(q).ok_or(ArithError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(ArithError::FieldTooLarge(q));
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(f) = reg.get(&q) {
            return Ok(f);
        }
        let f: &'static Field = Box::leak(Box::new(Field::build(p, e)));
        reg.insert(q, f);
        Ok(f)
    }

    /// Shorthand for `F_2`.
    pub fn f2() -> &'static Field {
        Field::get(2).expect("F_2")
    }

    fn build(p: u32, e: u32) -> Field {
        let q = p.pow(e);
        let modulus = find_modulus(p, e);
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        let digs: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, e)).collect();
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = digs[a].iter().zip(&digs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = undigits(&s, p);
                mul[a * n + b] = if e == 1 {
                    (a as u32 * b as u32) % p
                } else {
                    undigits(&mul_mod(&digs[a], &digs[b], &modulus, p), p)
                };
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..n {
            neg[a] = (0..q).find(|&b| add[a * n + b as usize] == 0).unwrap();
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * n + b as usize] == 1).unwrap();
            }
        }
        Field { p, e, q, add, mul, neg, inv, modulus }
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }
    /// Defining polynomial of `F_q` over `F_p`, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// The element `a^j` of the literal grammar; `a` is the class of `X`.
    pub fn gen_pow(&self, j: u64) -> u32 {
        let a = if self.e == 1 { self.primitive_element() } else { self.p };
        self.pow(a, j)
    }

    /// Least element (in encoding order) generating `F_q^*`.
    pub fn primitive_element(&self) -> u32 {
        let order = self.q - 1;
        (1..self.q)
            .find(|&g| {
                let mut x = g;
                let mut k = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    k += 1;
                }
                k == order
            })
            .expect("F_q^* is cyclic")
    }

    /// An `F_p`-basis of `F_q` (as encodings `p^i`).
    pub fn additive_basis(&self) -> Vec<u32> {
        (0..self.e).map(|i| self.p.pow(i)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Embedding of the integer `n` via `n * 1`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::get(6).is_err());
        assert!(Field::get(1).is_err());
        assert!(Field::get(12).is_err());
    }

    #[test]
    fn axioms_by_exhaustion() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16] {
            let f = Field::get(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = Field::get(9).unwrap();
        assert_eq!(f.characteristic(), 3);
        let fixed: Vec<u32> = f.elements().filter(|&a| f.pow(a, 3) == a).collect();
        assert_eq!(fixed, vec![0, 1, 2]);
        // x -> x^q is the identity on F_q
        assert!(f.elements().all(|a| f.pow(a, 9) == a));
    }

    #[test]
    fn generator_is_primitive() {
        let f = Field::get(4).unwrap();
        let g = f.primitive_element();
        let powers: std::collections::BTreeSet<u32> = (0..3).map(|j| f.pow(g, j)).collect();
        assert_eq!(powers.len(), 3);
        assert_eq!(f.gen_pow(0), 1);
    }
}
