//! Reduction of tree vertices to the fundamental domain `{v_l}` of `GL_2(A)`.

use crate::arith::{Field, P1Space, Poly, ProjPoint, RatFn};
use crate::tree::{LaurentPi, Mat2, VertexNF};

/// `(level, gamma)` with `gamma` in `GL_2(A)` and `gamma . v_level = v`.
///
/// Continued-fraction descent: strip the polynomial part of `u` by a
/// translation, then invert by `(0 1; 1 0)`; `k` strictly drops until `u = 0`
/// and `k <= 0`.
pub fn gl2a_reduce(v: &VertexNF, field: &'static Field) -> (usize, Mat2) {
    let s = Mat2::swap(field);
    let mut gamma = Mat2::identity(field);
    let mut w = v.clone();
    loop {
        let (poly, frac) = w.u.split_polynomial(field);
        if !poly.is_zero() {
            gamma = &gamma * &Mat2::translation(RatFn::from_poly(poly));
            w = VertexNF { k: w.k, u: frac.clone() };
        }
        if frac.is_zero() {
            if w.k <= 0 {
                break;
            }
            w = VertexNF { k: -w.k, u: LaurentPi::zero() };
        } else {
            w = w.apply(&s).expect("invertible");
        }
        gamma = &gamma * &s;
    }
    let level = (-w.k) as usize;
    debug_assert_eq!(VertexNF::v(level as i64).apply(&gamma).unwrap(), *v);
    (level, gamma)
}

/// Normalized bottom row of `gamma` modulo the level: the label of the coset `Gamma_0(n) gamma`.
pub fn coset_point(space: &P1Space, gamma: &Mat2) -> ProjPoint {
    let c = gamma.c.as_poly().expect("integral matrix");
    let d = gamma.d.as_poly().expect("integral matrix");
    space.normalize(c, d).expect("bottom row of GL_2(A) is unimodular")
}

/// An element of `GL_2(A)` whose coset label is `pt`.
pub fn lift_point(space: &P1Space, pt: &ProjPoint) -> Mat2 {
    let f = space.modulus().field();
    let n = space.modulus().generator();
    if space.modulus().is_unit() || pt.c.is_zero() {
        return Mat2::identity(f);
    }
    let c = &pt.c;
    // d' = d + t n coprime to c exists since gcd(c, d, n) = 1
    let mut t_index = 0u64;
    let d = loop {
        let cand = &pt.d + &(&Poly::from_index(f, t_index) * n);
        if c.gcd(&cand).is_one() {
            break cand;
        }
        t_index += 1;
    };
    let (g, s, t) = c.xgcd(&d);
    debug_assert!(g.is_one());
    // t d + s c = 1
    let gamma = Mat2::from_polys(&t, &(-&s), c, &d);
    debug_assert!(gamma.det().is_one());
    gamma
}
