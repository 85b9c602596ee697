//! Finite Laurent polynomials in the uniformizer `pi = 1/T` at infinity.

use std::fmt;

use crate::arith::{Field, Poly, RatFn};

/// `sum c_i pi^i` over finitely many indices, stored sparsely in increasing index order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPi {
    terms: Vec<(i64, u32)>,
}

impl LaurentPi {
    pub fn zero() -> Self {
        LaurentPi { terms: Vec::new() }
    }

    /// From `(index, coefficient)` pairs in any order; zero coefficients dropped, repeated indices added.
    pub fn from_terms(field: &Field, mut terms: Vec<(i64, u32)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, u32)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = field.add(last.1, c),
                _ => out.push((i, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        LaurentPi { terms: out }
    }

    /// Expansion of `x` at infinity truncated to indices `< to`.
    pub fn expand(x: &RatFn, to: i64) -> Self {
        LaurentPi { terms: x.laurent_at_infinity(to) }
    }

    pub fn terms(&self) -> &[(i64, u32)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Lowest index, i.e. the valuation at infinity.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }
    pub fn coeff(&self, i: i64) -> u32 {
        self.terms.iter().find(|t| t.0 == i).map_or(0, |t| t.1)
    }

    /// Drop all indices `>= to`.
    pub fn truncate(&self, to: i64) -> Self {
        LaurentPi { terms: self.terms.iter().copied().filter(|t| t.0 < to).collect() }
    }

    /// Split into the part with indices `<= 0` (a polynomial in `T`) and the rest.
    pub fn split_polynomial(&self, field: &'static Field) -> (Poly, LaurentPi) {
        let mut coeffs = Vec::new();
        let mut rest = Vec::new();
        for &(i, c) in &self.terms {
            if i <= 0 {
                let d = (-i) as usize;
                if coeffs.len() <= d {
                    coeffs.resize(d + 1, 0);
                }
                coeffs[d] = c;
            } else {
                rest.push((i, c));
            }
        }
        (Poly::from_coeffs(field, coeffs), LaurentPi { terms: rest })
    }

    pub fn add_term(&self, field: &Field, i: i64, c: u32) -> Self {
        let mut t = self.terms.clone();
        t.push((i, c));
        LaurentPi::from_terms(field, t)
    }

    pub fn to_ratfn(&self, field: &'static Field) -> RatFn {
        let mut acc = RatFn::zero(field);
        for &(i, c) in &self.terms {
            acc = &acc + &RatFn::pi_pow(field, i).scale(c);
        }
        acc
    }
}

impl fmt::Debug for LaurentPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, c)| format!("{c}*pi^{i}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_ratfn() {
        let f2 = Field::f2();
        let l = LaurentPi::from_terms(f2, vec![(-2, 1), (3, 1), (0, 1), (3, 1)]);
        assert_eq!(l.terms(), &[(-2, 1), (0, 1)]);
        let x = l.to_ratfn(f2);
        assert_eq!(x.to_string(), "T^2+1");
        assert_eq!(LaurentPi::expand(&x, 10), l);
        let (p, rest) = LaurentPi::from_terms(f2, vec![(-1, 1), (2, 1)]).split_polynomial(f2);
        assert_eq!(p.to_string(), "T");
        assert_eq!(rest.terms(), &[(2, 1)]);
    }
}
