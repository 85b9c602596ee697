//! Twisted polynomials `F{tau}` with `tau b = b^q tau`.

use std::fmt;
use std::ops::{Add, Mul};

use crate::arith::{Field, Poly, RatFn};

#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    field: &'static Field,
    coeffs: Vec<RatFn>,
}

impl SkewPoly {
    pub fn new(field: &'static Field, mut coeffs: Vec<RatFn>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { field, coeffs }
    }

    pub fn zero(field: &'static Field) -> Self {
        SkewPoly { field, coeffs: Vec::new() }
    }
    pub fn scalar(x: RatFn) -> Self {
        SkewPoly::new(x.field(), vec![x])
    }
    pub fn tau(field: &'static Field) -> Self {
        SkewPoly::new(field, vec![RatFn::zero(field), RatFn::one(field)])
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> RatFn {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFn::zero(self.field))
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree in `tau`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The additive polynomial `sum c_i x^{q^i}` evaluated at `x`.
    pub fn eval(&self, x: &RatFn) -> RatFn {
        let q = self.field.q() as u64;
        let mut acc = RatFn::zero(self.field);
        let mut pw = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                pw = pw.pow(q);
            }
            if !c.is_zero() {
                acc = &acc + &(c * &pw);
            }
        }
        acc
    }
}

impl<'a> Add<&'a SkewPoly> for &'a SkewPoly {
    type Output = SkewPoly;
    fn add(self, rhs: &SkewPoly) -> SkewPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SkewPoly::new(self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a SkewPoly> for &'a SkewPoly {
    type Output = SkewPoly;
    fn mul(self, rhs: &SkewPoly) -> SkewPoly {
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return SkewPoly::zero(f);
        }
        let q = f.q() as u64;
        let mut out = vec![RatFn::zero(f); self.coeffs.len() + rhs.coeffs.len() - 1];
        // b^{q^i} for each coefficient of rhs, built up one Frobenius at a time
        let mut twisted: Vec<RatFn> = rhs.coeffs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                twisted = twisted.iter().map(|b| b.pow(q)).collect();
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in twisted.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        SkewPoly::new(f, out)
    }
}

impl From<Poly> for SkewPoly {
    fn from(p: Poly) -> Self {
        SkewPoly::scalar(RatFn::from_poly(p))
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = if c.is_poly() && c.num().coeffs().iter().filter(|&&x| x != 0).count() > 1 {
                    format!("({c})")
                } else {
                    c.to_string()
                };
                match i {
                    0 => c,
                    1 if c == "1" => "tau".into(),
                    1 => format!("{c}*tau"),
                    _ if c == "1" => format!("tau^{i}"),
                    _ => format!("{c}*tau^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
