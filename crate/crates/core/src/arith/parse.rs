//! Literal grammar for elements of `A` and `F`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := power (('*' | '/') power)*
//! power  := unary ('^' integer)?
//! unary  := '-' unary | atom
//! atom   := integer | 'T' | 'a' | '(' expr ')'
//! ```
//!
//! Integers are read modulo the characteristic and `a` is the generator of
//! `F_q` over `F_p`. Whitespace is ignored.

use super::field::Field;
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::ArithError;

struct Parser<'s> {
    field: &'static Field,
    src: &'s [u8],
    pos: usize,
}

fn err(msg: impl Into<String>) -> ArithError {
    ArithError::Parse(msg.into())
}

impl<'s> Parser<'s> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<u64, ArithError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected an integer at offset {start}")));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| err("integer literal too large"))
    }

    fn expr(&mut self) -> Result<RatFn, ArithError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFn, ArithError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let d = self.power()?;
                if d.is_zero() {
                    return Err(err("division by zero in literal"));
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RatFn, ArithError> {
        let base = self.unary()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<RatFn, ArithError> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<RatFn, ArithError> {
        let f = self.field;
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                Ok(RatFn::t(f))
            }
            Some(b'a') => {
                self.pos += 1;
                Ok(RatFn::constant(f, f.gen_pow(1)))
            }
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                if !self.eat(b')') {
                    return Err(err("unbalanced parenthesis"));
                }
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFn::constant(f, (n % f.characteristic() as u64) as u32))
            }
            Some(c) => Err(err(format!("unexpected character '{}' at offset {}", c as char, self.pos))),
            None => Err(err("unexpected end of input")),
        }
    }
}

/// Parse an element of `F = F_q(T)`.
pub fn parse_ratfn(field: &'static Field, s: &str) -> Result<RatFn, ArithError> {
    let mut p = Parser { field, src: s.as_bytes(), pos: 0 };
    let x = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    Ok(x)
}

/// Parse an element of `A = F_q[T]`.
pub fn parse_poly(field: &'static Field, s: &str) -> Result<Poly, ArithError> {
    let x = parse_ratfn(field, s)?;
    x.as_poly().cloned().ok_or_else(|| err(format!("'{s}' is not a polynomial")))
}

/// Parse a point of `P^1(F)` as coprime coordinates `(x : y)` with `y` monic or `(1 : 0)`.
/// Accepts `inf`, `oo` or `∞` for the point at infinity.
pub fn parse_p1(field: &'static Field, s: &str) -> Result<(Poly, Poly), ArithError> {
    let t = s.trim();
    if matches!(t, "inf" | "oo" | "∞" | "infinity") {
        return Ok((Poly::one(field), Poly::zero(field)));
    }
    let x = parse_ratfn(field, t)?;
    Ok((x.num().clone(), x.den().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_back() {
        let f2 = Field::f2();
        for s in ["T^3+T+1", "T^4+T^2+1", "T", "1", "0", "T^5+T^2+1"] {
            assert_eq!(parse_poly(f2, s).unwrap().to_string(), s);
        }
        assert_eq!(parse_poly(f2, "(T+1)^2").unwrap().to_string(), "T^2+1");
        assert_eq!(parse_poly(f2, " T ^ 2 + 3 * T ").unwrap().to_string(), "T^2+T");
        assert_eq!(parse_ratfn(f2, "(T+1)/T").unwrap().to_string(), "(T+1)/T");
        assert_eq!(parse_ratfn(f2, "1/T").unwrap().to_string(), "1/T");
    }

    #[test]
    fn extension_field_coefficients() {
        let f4 = Field::get(4).unwrap();
        let x = parse_poly(f4, "a^2*T^2+a*T+1").unwrap();
        assert_eq!(parse_poly(f4, &x.to_string()).unwrap(), x);
        let f3 = Field::get(3).unwrap();
        assert_eq!(parse_poly(f3, "2*T-1").unwrap().to_string(), "2*T+2");
    }

    #[test]
    fn rejects_garbage() {
        let f2 = Field::f2();
        assert!(matches!(parse_poly(f2, "T^"), Err(ArithError::Parse(_))));
        assert!(matches!(parse_poly(f2, "x+1"), Err(ArithError::Parse(_))));
        assert!(matches!(parse_poly(f2, "(T+1"), Err(ArithError::Parse(_))));
        assert!(matches!(parse_poly(f2, "1/T"), Err(ArithError::Parse(_))));
        assert!(matches!(parse_ratfn(f2, "1/(T+T)"), Err(ArithError::Parse(_))));
    }

    #[test]
    fn projective_points() {
        let f2 = Field::f2();
        let (x, y) = parse_p1(f2, "inf").unwrap();
        assert!(x.is_one() && y.is_zero());
        let (x, y) = parse_p1(f2, "1/T").unwrap();
        assert!(x.is_one() && y == Poly::t(f2));
        let (x, y) = parse_p1(f2, "0").unwrap();
        assert!(x.is_zero() && y.is_one());
    }
}
