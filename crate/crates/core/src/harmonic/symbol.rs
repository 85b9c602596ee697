//! Modular symbols `[a, b]` as harmonic cochains.

use std::collections::BTreeMap;

use super::cochain::{is_harmonic, Cochain, Tail};
use crate::arith::Poly;
use crate::error::HeckeError;
use crate::quotient::{Classified, EdgeSlot, QuotientGraph};
use crate::tree::{EdgeNF, Mat2, VertexNF};

/// A cusp `(x : y)` of `P^1(F)` with `x, y` coprime in `A`.
pub type Cusp = (Poly, Poly);

fn check_cusp(c: &Cusp) -> Result<(), HeckeError> {
    if c.0.is_zero() && c.1.is_zero() || !c.0.gcd(&c.1).is_one() {
        return Err(HeckeError::Invariant(format!("cusp ({} : {}) is not given by coprime coordinates", c.0, c.1)));
    }
    Ok(())
}

/// Some `gamma` in `GL_2(A)` whose first column is the cusp.
fn column_lift(c: &Cusp) -> Mat2 {
    let (_, s, t) = c.0.xgcd(&c.1);
    // s x + t y = 1
    Mat2::from_polys(&c.0, &-&t, &c.1, &s)
}

/// `x_j = g0 diag(pi^j, 1) v_0`; the arch from `a` (as `j -> -inf`) to `b` (as `j -> +inf`).
fn arch_vertex(g0: &Mat2, j: i64) -> VertexNF {
    VertexNF { k: j, u: Default::default() }.apply(g0).expect("invertible")
}

/// Level of `gamma^{-1} x` if it is a standard vertex `v_m`.
fn standard_level(gamma_inv: &Mat2, x: &VertexNF) -> Option<i64> {
    let y = x.apply(gamma_inv).expect("invertible");
    y.u.is_zero().then_some(-y.k)
}

/// The cochain `e -> sum over lifts of i_{[a,b]}` with `c(e) = i(e) |Gamma_e| / z`,
/// the arch running from `a` to `b`.
pub fn modular_symbol(g: &QuotientGraph, a: &Cusp, b: &Cusp) -> Result<Cochain, HeckeError> {
    check_cusp(a)?;
    check_cusp(b)?;
    let g0 = Mat2::from_polys(&a.0, &b.0, &a.1, &b.1);
    if g0.det().is_zero() {
        return Err(HeckeError::DegenerateSymbol);
    }
    let ls = g.stable_level() as i64;
    let gb = column_lift(b).inverse()?;
    let ga = column_lift(a).inverse()?;

    let mut jb = 0i64;
    while !standard_level(&gb, &arch_vertex(&g0, jb)).is_some_and(|m| m >= ls) {
        jb += 1;
    }
    let mut ja = 0i64;
    while !standard_level(&ga, &arch_vertex(&g0, ja)).is_some_and(|m| m >= ls) {
        ja -= 1;
    }

    let step = |j: i64| g.classify_tree_edge(&EdgeNF::new(arch_vertex(&g0, j), arch_vertex(&g0, j + 1)));
    let mut counts: BTreeMap<EdgeSlot, i64> = BTreeMap::new();
    for j in ja..jb {
        let c = step(j);
        *counts.entry(c.slot).or_default() += c.sign;
    }
    // the two ends run out along half-lines
    let mut starts = Vec::new();
    for (j, want) in [(jb, 1), (ja - 1, -1)] {
        match step(j) {
            Classified { slot: EdgeSlot::Tail { cusp, pos }, sign } if sign == want => starts.push((cusp, pos, sign)),
            other => return Err(HeckeError::Invariant(format!("arch end is not on a half-line: {other:?}"))),
        }
    }

    let z = g.z_order() as i64;
    let weight = |slot: EdgeSlot| g.slot_stab(slot) as i64 / z;
    let mut out = Cochain::zero(g);
    for (i, v) in out.finite.iter_mut().enumerate() {
        let slot = EdgeSlot::Finite(i);
        *v = counts.get(&slot).copied().unwrap_or(0) * weight(slot);
    }
    for (cusp, tail) in out.tails.iter_mut().enumerate() {
        let mut len = 0;
        let mut constant = 0;
        for &(c, pos, s) in &starts {
            if c == cusp {
                len = len.max(pos);
                constant += s;
            }
        }
        for slot in counts.keys() {
            if let EdgeSlot::Tail { cusp: c, pos } = *slot {
                if c == cusp {
                    len = len.max(pos + 1);
                }
            }
        }
        let exceptional = (0..len)
            .map(|pos| {
                let slot = EdgeSlot::Tail { cusp, pos };
                let from_ends: i64 = starts.iter().filter(|&&(c, p, _)| c == cusp && p <= pos).map(|s| s.2).sum();
                (counts.get(&slot).copied().unwrap_or(0) + from_ends) * weight(slot)
            })
            .collect();
        *tail = Tail { exceptional, constant };
    }
    out.canonicalize(g);
    if !is_harmonic(g, &out) {
        return Err(HeckeError::Invariant("modular symbol is not harmonic".into()));
    }
    Ok(out)
}

/// `[0, inf]`.
pub fn symbol_zero_infinity(g: &QuotientGraph) -> Result<Cochain, HeckeError> {
    let f = g.field();
    modular_symbol(g, &(Poly::zero(f), Poly::one(f)), &(Poly::one(f), Poly::zero(f)))
}
