//! Vertices and edges of the Bruhat-Tits tree in normal form.

use std::fmt;

use super::laurent::LaurentPi;
use super::matrix::Mat2;
use crate::arith::{Field, RatFn};
use crate::error::ArithError;

/// The class of `(pi^k, u; 0, 1)` modulo `GL_2(O_inf) Z(F_inf)`, with every index of `u` below `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexNF {
    pub k: i64,
    pub u: LaurentPi,
}

/// An oriented edge, given by its endpoints.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeNF {
    pub origin: VertexNF,
    pub terminus: VertexNF,
}

impl VertexNF {
    /// The vertex `v_n` of `diag(T^n, 1)`.
    pub fn v(n: i64) -> Self {
        VertexNF { k: -n, u: LaurentPi::zero() }
    }

    pub fn matrix(&self, field: &'static Field) -> Mat2 {
        Mat2::new(RatFn::pi_pow(field, self.k), self.u.to_ratfn(field), RatFn::zero(field), RatFn::one(field))
    }

    /// The `q + 1` neighbours: the `q` vertices one step towards `k + 1` and the one at `k - 1`.
    pub fn neighbors(&self, field: &'static Field) -> Vec<VertexNF> {
        let mut out: Vec<VertexNF> =
            field.elements().map(|c| VertexNF { k: self.k + 1, u: self.u.add_term(field, self.k, c) }).collect();
        out.push(self.parent());
        out
    }

    /// The unique neighbour with smaller `k`.
    pub fn parent(&self) -> VertexNF {
        VertexNF { k: self.k - 1, u: self.u.truncate(self.k - 1) }
    }

    pub fn is_adjacent(&self, other: &VertexNF) -> bool {
        (other.k == self.k - 1 && other == &self.parent()) || (self.k == other.k - 1 && self == &other.parent())
    }

    pub fn apply(&self, g: &Mat2) -> Result<VertexNF, ArithError> {
        vertex_normal_form(&(g * &self.matrix(g.field())))
    }
}

/// Canonical `(k, u)` of the vertex represented by `g`.
pub fn vertex_normal_form(g: &Mat2) -> Result<VertexNF, ArithError> {
    let det = g.det();
    if det.is_zero() {
        return Err(ArithError::SingularMatrix);
    }
    let swap = g.d.is_zero() || (!g.c.is_zero() && g.c.val_inf() < g.d.val_inf());
    let (b, d) = if swap { (&g.a, &g.c) } else { (&g.b, &g.d) };
    let k = det.val_inf().unwrap() - 2 * d.val_inf().unwrap();
    Ok(VertexNF { k, u: LaurentPi::expand(&(b / d), k) })
}

impl EdgeNF {
    pub fn new(origin: VertexNF, terminus: VertexNF) -> Self {
        debug_assert!(origin.is_adjacent(&terminus));
        EdgeNF { origin, terminus }
    }

    pub fn reverse(&self) -> EdgeNF {
        EdgeNF { origin: self.terminus.clone(), terminus: self.origin.clone() }
    }

    pub fn apply(&self, g: &Mat2) -> Result<EdgeNF, ArithError> {
        Ok(EdgeNF { origin: self.origin.apply(g)?, terminus: self.terminus.apply(g)? })
    }

    /// The edge `v_0 -> v_1`.
    pub fn standard() -> Self {
        Self::standard_at(0)
    }

    /// The edge `v_l -> v_{l+1}`.
    pub fn standard_at(level: usize) -> Self {
        EdgeNF { origin: VertexNF::v(level as i64), terminus: VertexNF::v(level as i64 + 1) }
    }
}

/// Edge represented by the matrix `g`: origin `g . v_0`, terminus `g . (0 1; pi 0) . v_0`.
pub fn edge_of_matrix(g: &Mat2) -> Result<EdgeNF, ArithError> {
    let f = g.field();
    let w = Mat2::new(RatFn::zero(f), RatFn::one(f), RatFn::pi_pow(f, 1), RatFn::zero(f));
    Ok(EdgeNF { origin: vertex_normal_form(g)?, terminus: vertex_normal_form(&(g * &w))? })
}

pub fn edge_reverse(e: &EdgeNF) -> EdgeNF {
    e.reverse()
}

impl fmt::Debug for VertexNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V(k={}, u={:?})", self.k, self.u)
    }
}

impl fmt::Debug for EdgeNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.origin, self.terminus)
    }
}
