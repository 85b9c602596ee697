//! 2x2 matrices over `F = F_q(T)`.

use std::fmt;
use std::ops::Mul;

use crate::arith::{Field, Poly, RatFn};
use crate::error::ArithError;

/// `(a b; c d)` with entries in `F`. Invertibility is checked where it matters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: RatFn,
    pub b: RatFn,
    pub c: RatFn,
    pub d: RatFn,
}

impl Mat2 {
    pub fn new(a: RatFn, b: RatFn, c: RatFn, d: RatFn) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_polys(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Self {
        Mat2::new(a.clone().into(), b.clone().into(), c.clone().into(), d.clone().into())
    }

    pub fn identity(field: &'static Field) -> Self {
        let (o, z) = (RatFn::one(field), RatFn::zero(field));
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    pub fn diag(x: RatFn, y: RatFn) -> Self {
        let z = RatFn::zero(x.field());
        Mat2::new(x, z.clone(), z, y)
    }

    /// `(0 1; 1 0)`.
    pub fn swap(field: &'static Field) -> Self {
        let (o, z) = (RatFn::one(field), RatFn::zero(field));
        Mat2::new(z.clone(), o.clone(), o, z)
    }

    /// `(1 x; 0 1)`.
    pub fn translation(x: RatFn) -> Self {
        let f = x.field();
        let (o, z) = (RatFn::one(f), RatFn::zero(f));
        Mat2::new(o.clone(), x, z, o)
    }

    pub fn field(&self) -> &'static Field {
        self.a.field()
    }

    pub fn det(&self) -> RatFn {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn inverse(&self) -> Result<Mat2, ArithError> {
        let det = self.det();
        if det.is_zero() {
            return Err(ArithError::SingularMatrix);
        }
        let di = det.inv()?;
        Ok(Mat2::new(&self.d * &di, &(-&self.b) * &di, &(-&self.c) * &di, &self.a * &di))
    }

    pub fn scale(&self, x: &RatFn) -> Mat2 {
        Mat2::new(&self.a * x, &self.b * x, &self.c * x, &self.d * x)
    }

    /// Entries as polynomials if all are integral.
    pub fn to_poly(&self) -> Option<[[Poly; 2]; 2]> {
        Some([
            [self.a.as_poly()?.clone(), self.b.as_poly()?.clone()],
            [self.c.as_poly()?.clone(), self.d.as_poly()?.clone()],
        ])
    }

    /// Entries in `A` and determinant in `F_q^*`.
    pub fn in_gl2a(&self) -> bool {
        self.to_poly().is_some() && {
            let d = self.det();
            !d.is_zero() && d.as_poly().is_some_and(|p| p.is_constant())
        }
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, r: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &r.a) + &(&self.b * &r.c),
            &(&self.a * &r.b) + &(&self.b * &r.d),
            &(&self.c * &r.a) + &(&self.d * &r.c),
            &(&self.c * &r.b) + &(&self.d * &r.d),
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        &self * &r
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
