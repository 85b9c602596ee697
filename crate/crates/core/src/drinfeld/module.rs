//! Drinfeld modules `phi(T) = T + a_1 tau + ... + a_r tau^r` over `F_q(T)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use super::skew::SkewPoly;
use crate::arith::{Field, Place, Poly, RatFn};
use crate::error::DrinfeldError;

#[derive(Clone, PartialEq, Eq)]
pub struct DrinfeldModule {
    field: &'static Field,
    /// `a_1, ..., a_r` with `a_r != 0`.
    coeffs: Vec<RatFn>,
}

/// Valuation threshold at a place: points with smaller valuation escape under iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeBound {
    pub place: Place,
    pub theta: i64,
}

impl DrinfeldModule {
    /// The rank-2 module `phi(T) = T + g tau + delta tau^2`.
    pub fn new(g: RatFn, delta: RatFn) -> Result<Self, DrinfeldError> {
        if delta.is_zero() {
            return Err(DrinfeldError::ZeroDelta);
        }
        Ok(DrinfeldModule { field: delta.field(), coeffs: vec![g, delta] })
    }

    /// The Carlitz module `phi(T) = T + tau`, used as a rank-one reference.
    pub fn carlitz(field: &'static Field) -> Self {
        DrinfeldModule { field, coeffs: vec![RatFn::one(field)] }
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }
    pub fn g(&self) -> &RatFn {
        &self.coeffs[0]
    }
    pub fn delta(&self) -> &RatFn {
        self.coeffs.last().unwrap()
    }

    pub fn phi_t(&self) -> SkewPoly {
        let mut c = vec![RatFn::t(self.field)];
        c.extend(self.coeffs.iter().cloned());
        SkewPoly::new(self.field, c)
    }

    /// `phi(a)` by Horner's rule in `phi(T)`.
    pub fn eval(&self, a: &Poly) -> SkewPoly {
        let f = self.field;
        let pt = self.phi_t();
        let mut acc = SkewPoly::zero(f);
        for &c in a.coeffs().iter().rev() {
            acc = &(&acc * &pt) + &SkewPoly::scalar(RatFn::constant(f, c));
        }
        acc
    }

    /// `g^{q+1} / delta` for rank 2.
    pub fn j_invariant(&self) -> Result<RatFn, DrinfeldError> {
        if self.rank() != 2 {
            return Err(DrinfeldError::Invariant("j-invariant needs rank 2".into()));
        }
        Ok(&self.g().pow(self.field.q() as u64 + 1) / self.delta())
    }

    /// `v(j) >= 0`; always true when `j = 0`.
    pub fn potential_good_reduction_at(&self, p: &Poly) -> Result<bool, DrinfeldError> {
        if !p.is_irreducible()? {
            return Err(crate::ArithError::NotPrime(p.to_string()).into());
        }
        let j = self.j_invariant()?;
        Ok(j.is_zero() || j.valuation(&Place::Finite(p.monic()))? >= 0)
    }

    /// All coefficients of `phi(T)`, including `T` itself.
    fn all_coeffs(&self) -> Vec<RatFn> {
        let mut c = vec![RatFn::t(self.field)];
        c.extend(self.coeffs.iter().cloned());
        c
    }

    fn theta(&self, place: &Place) -> i64 {
        let q = self.field.q() as i64;
        let r = self.rank() as u32;
        let top = self.delta().valuation(place).expect("nonzero");
        let qr = q.pow(r);
        // x escapes once v(a_r) + q^r v(x) is strictly below every other term and below v(x)
        let mut t = Integer::div_ceil(&-top, &(qr - 1));
        for (i, a) in self.all_coeffs().iter().enumerate().take(r as usize) {
            if !a.is_zero() {
                let v = a.valuation(place).expect("nonzero");
                t = t.min(Integer::div_ceil(&(v - top), &(qr - q.pow(i as u32))));
            }
        }
        t
    }

    /// Thresholds at infinity and at every finite place where they are not zero.
    /// At all other places torsion points are integral.
    pub fn escape_bounds(&self) -> Vec<EscapeBound> {
        let mut primes = BTreeSet::new();
        for a in &self.coeffs {
            primes.extend(a.den().factor().into_iter().map(|(p, _)| p));
        }
        primes.extend(self.delta().num().factor().into_iter().map(|(p, _)| p));
        let mut out = vec![EscapeBound { place: Place::Infinity, theta: self.theta(&Place::Infinity) }];
        for p in primes {
            let place = Place::Finite(p);
            let theta = self.theta(&place);
            if theta != 0 {
                out.push(EscapeBound { place, theta });
            }
        }
        out
    }
}

impl fmt::Display for DrinfeldModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi(T) = {}", self.phi_t())
    }
}

impl fmt::Debug for DrinfeldModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
