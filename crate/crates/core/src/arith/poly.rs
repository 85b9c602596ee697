//! Dense univariate polynomials over `F_q` in the variable `T`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use crate::error::ArithError;

/// Element of `A = F_q[T]`, coefficients low to high with no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: &'static Field,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: &'static Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: &'static Field) -> Self {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &'static Field, c: u32) -> Self {
        Poly::from_coeffs(field, vec![c])
    }

    /// The variable `T`.
    pub fn t(field: &'static Field) -> Self {
        Poly::monomial(field, 1, 1)
    }

    /// `c * T^k`.
    pub fn monomial(field: &'static Field, c: u32, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::from_coeffs(field, v)
    }

    pub fn from_coeffs(field: &'static Field, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.q()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Polynomial over `F_2` from a bit mask (bit `i` is the coefficient of `T^i`).
    pub fn from_bits(field: &'static Field, bits: u64) -> Self {
        debug_assert_eq!(field.q(), 2);
        let coeffs = (0..64).map(|i| ((bits >> i) & 1) as u32).collect();
        Poly::from_coeffs(field, coeffs)
    }

    /// The polynomial whose base-`q` digits are `index`; enumerates `A` in a fixed order.
    pub fn from_index(field: &'static Field, mut index: u64) -> Self {
        let q = field.q() as u64;
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push((index % q) as u32);
            index /= q;
        }
        Poly::from_coeffs(field, coeffs)
    }

    /// All polynomials of degree `< n` (including zero), `q^n` of them.
    pub fn all_below_degree(field: &'static Field, n: usize) -> impl Iterator<Item = Poly> {
        let count = (field.q() as u64).pow(n as u32);
        (0..count).map(move |i| Poly::from_index(field, i))
    }

    /// All monic polynomials of degree exactly `n`.
    pub fn monics_of_degree(field: &'static Field, n: usize) -> impl Iterator<Item = Poly> {
        let lead = Poly::monomial(field, 1, n);
        Poly::all_below_degree(field, n).map(move |p| &p + &lead)
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1` as a convenience for bounds.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(i) => self.scale(i),
            None => self.clone(),
        }
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs: v }
    }

    /// Coefficients reversed with respect to degree `n` (`T^n f(1/T)`).
    pub fn reversed(&self, n: usize) -> Poly {
        let mut v = vec![0; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[n - i] = c;
        }
        Poly::from_coeffs(self.field, v)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Euclidean division `self = quot * b + rem` with `deg rem < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly), ArithError> {
        if b.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let f = self.field;
        let db = b.coeffs.len() - 1;
        let inv_lead = f.inv(b.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + db], inv_lead);
            quot[i] = c;
            if c != 0 {
                for (k, &bk) in b.coeffs.iter().enumerate() {
                    rem[i + k] = f.sub(rem[i + k], f.mul(c, bk));
                }
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Poly {
        self.divrem(b).expect("nonzero modulus").1
    }

    /// Exact quotient; panics in debug builds if the division is not exact.
    pub fn exact_div(&self, b: &Poly) -> Poly {
        let (q, r) = self.divrem(b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.leading()) {
            Some(i) => (r0.scale(i), s0.scale(i), t0.scale(i)),
            None => (r0, s0, t0),
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::from_coeffs(f, v)
    }

    /// True iff `self` has no nonconstant proper divisor; errors on constants.
    pub fn is_irreducible(&self) -> Result<bool, ArithError> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(ArithError::ConstantInput),
        };
        for k in 1..=d / 2 {
            if Poly::monics_of_degree(self.field, k).any(|g| g.divides(self)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Monic irreducible factors with multiplicity, by trial division.
    pub fn factor(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        let mut rest = self.monic();
        let mut k = 1;
        while let Some(d) = rest.degree().filter(|&d| d > 0) {
            if 2 * k > d {
                out.push((rest.clone(), 1));
                break;
            }
            // every lower-degree factor is already removed, so any monic divisor of degree k is prime
            for g in Poly::monics_of_degree(self.field, k) {
                let mut e = 0;
                while g.divides(&rest) {
                    rest = rest.exact_div(&g);
                    e += 1;
                }
                if e > 0 {
                    out.push((g, e));
                }
            }
            k += 1;
        }
        out.sort();
        out
    }

    /// Monic irreducible polynomials of degree exactly `n`.
    pub fn irreducibles_of_degree(field: &'static Field, n: usize) -> Vec<Poly> {
        Poly::monics_of_degree(field, n).filter(|p| p.is_irreducible().unwrap_or(false)).collect()
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.coeffs.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, v)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, v)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = coeff_literal(field, c);
            match (i, c == 1) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{coef}*T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{coef}*T^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Coefficient as written by the literal grammar: an integer for prime fields,
/// `a^j` for extension fields.
pub(crate) fn coeff_literal(field: &Field, c: u32) -> String {
    if field.degree() == 1 {
        return c.to_string();
    }
    if c == 1 {
        return "1".into();
    }
    let j = (0..field.q() as u64 - 1).find(|&j| field.gen_pow(j) == c).expect("nonzero");
    format!("a^{j}")
}
