//! Rational functions `F = F_q(T)` in reduced form, and their valuations.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::Field;
use super::poly::Poly;
use crate::error::ArithError;

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

/// A place of `F` that is used for valuations: a finite prime given by its
/// monic irreducible generator, or the place at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// Degree of the residue field over `F_q`.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lead = den.leading();
        if lead != 1 {
            let inv = den.field().inv(lead).expect("nonzero");
            num = num.scale(inv);
            den = den.scale(inv);
        }
        if num.is_zero() {
            den = Poly::one(den.field());
        }
        RatFn { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RatFn { num: p, den }
    }

    pub fn zero(field: &'static Field) -> Self {
        RatFn::from_poly(Poly::zero(field))
    }
    pub fn one(field: &'static Field) -> Self {
        RatFn::from_poly(Poly::one(field))
    }
    pub fn constant(field: &'static Field, c: u32) -> Self {
        RatFn::from_poly(Poly::constant(field, c))
    }
    pub fn t(field: &'static Field) -> Self {
        RatFn::from_poly(Poly::t(field))
    }

    /// `T^k` for any integer `k`; `pi_pow(k)` is `T^{-k}`, the `k`-th power of the uniformizer at infinity.
    pub fn t_pow(field: &'static Field, k: i64) -> Self {
        if k >= 0 {
            RatFn::from_poly(Poly::monomial(field, 1, k as usize))
        } else {
            RatFn { num: Poly::one(field), den: Poly::monomial(field, 1, (-k) as usize) }
        }
    }

    pub fn pi_pow(field: &'static Field, k: i64) -> Self {
        RatFn::t_pow(field, -k)
    }

    pub fn field(&self) -> &'static Field {
        self.num.field()
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<RatFn, ArithError> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: u64) -> RatFn {
        // reduced form is preserved by powers
        let mut r = RatFn { num: self.num.pow(n), den: self.den.pow(n) };
        if r.num.is_zero() {
            r.den = Poly::one(self.field());
        }
        r
    }

    pub fn powi(&self, n: i64) -> Result<RatFn, ArithError> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inv()?.pow((-n) as u64))
        }
    }

    pub fn scale(&self, c: u32) -> RatFn {
        RatFn::reduce(self.num.scale(c), self.den.clone())
    }

    /// Valuation at `place`; errors on zero.
    pub fn valuation(&self, place: &Place) -> Result<i64, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroValuation);
        }
        Ok(match place {
            Place::Infinity => self.den.deg_i64() - self.num.deg_i64(),
            Place::Finite(p) => poly_valuation(&self.num, p) - poly_valuation(&self.den, p),
        })
    }

    /// Valuation at infinity with `None` standing for `+infinity` at zero.
    pub fn val_inf(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.den.deg_i64() - self.num.deg_i64())
    }

    /// Nonzero Laurent coefficients at infinity in `pi = 1/T` with index `< to`,
    /// as `(index, coefficient)` pairs in increasing index order.
    pub fn laurent_at_infinity(&self, to: i64) -> Vec<(i64, u32)> {
        let Some(v) = self.val_inf() else { return Vec::new() };
        if to <= v {
            return Vec::new();
        }
        let f = self.field();
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        // num/den = pi^v * Nrev(pi) / Drev(pi), Drev(0) = 1
        let nrev = self.num.reversed(dn);
        let drev = self.den.reversed(dd);
        let len = (to - v) as usize;
        let mut series = vec![0u32; len];
        let mut work: Vec<u32> = (0..len).map(|i| nrev.coeff(i)).collect();
        let inv0 = f.inv(drev.coeff(0)).expect("monic denominator");
        for i in 0..len {
            let c = f.mul(work[i], inv0);
            series[i] = c;
            if c != 0 {
                for (k, &dk) in drev.coeffs().iter().enumerate() {
                    if i + k < len {
                        work[i + k] = f.sub(work[i + k], f.mul(c, dk));
                    }
                }
            }
        }
        series
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (v + i as i64, c))
            .collect()
    }

    /// Reduce a `p`-integral element modulo the prime `p`; `None` if not integral.
    pub fn reduce_mod(&self, p: &Poly) -> Option<Poly> {
        let den = self.den.rem(p);
        if den.is_zero() {
            return None;
        }
        let (g, s, _) = den.xgcd(p);
        debug_assert!(g.is_one());
        Some((&self.num.rem(p) * &s).rem(p))
    }
}

/// Exponent of the prime `p` in the nonzero polynomial `a`.
pub fn poly_valuation(a: &Poly, p: &Poly) -> i64 {
    let mut a = a.clone();
    let mut k = 0;
    loop {
        let (q, r) = a.divrem(p).expect("nonzero prime");
        if !r.is_zero() {
            return k;
        }
        a = q;
        k += 1;
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &Poly| {
                if p.coeffs().iter().filter(|&&c| c != 0).count() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatFn::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RatFn::inv`] for a checked version.
impl<'a> Div<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFn::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}
