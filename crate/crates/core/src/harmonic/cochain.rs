//! Integer-valued `Gamma_0(n)`-invariant cochains, stored on the quotient graph.
//!
//! A cochain is a value on each geometric edge of the finite part (in the stored
//! orientation) and, along each half-line, a list of exceptional values followed
//! by a tail with constant normalized value `c(f) * z / |Gamma_f|`. Harmonicity
//! forces the normalized value to be constant along the degree-two part of a
//! half-line, so this representation is exact for every harmonic cochain.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::HeckeError;
use crate::quotient::{Classified, EdgeSlot, QuotientGraph, VertexLoc};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tail {
    pub exceptional: Vec<i64>,
    pub constant: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub finite: Vec<i64>,
    pub tails: Vec<Tail>,
}

/// JSON form: finite values keyed by stored edge id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainRecord {
    pub finite: BTreeMap<usize, i64>,
    pub tails: Vec<Tail>,
}

impl Cochain {
    pub fn zero(g: &QuotientGraph) -> Self {
        Cochain { finite: vec![0; g.finite_edges().len()], tails: vec![Tail::default(); g.half_lines().len()] }
    }

    /// Value on a slot in its own orientation.
    pub fn value(&self, g: &QuotientGraph, slot: EdgeSlot) -> i64 {
        match slot {
            EdgeSlot::Finite(i) => self.finite[i],
            EdgeSlot::Tail { cusp, pos } => {
                let t = &self.tails[cusp];
                match t.exceptional.get(pos) {
                    Some(&v) => v,
                    None => tail_value(g, cusp, pos, t.constant),
                }
            }
        }
    }

    pub fn value_directed(&self, g: &QuotientGraph, c: Classified) -> i64 {
        c.sign * self.value(g, c.slot)
    }

    /// Value on stored edge `e` in its stored orientation.
    pub fn value_on_edge(&self, g: &QuotientGraph, e: usize) -> i64 {
        let (slot, s) = g.edge_slot(e);
        s * self.value(g, slot)
    }

    /// Drop trailing exceptional entries that agree with the tail formula.
    pub fn canonicalize(&mut self, g: &QuotientGraph) {
        for (cusp, t) in self.tails.iter_mut().enumerate() {
            while let Some(&last) = t.exceptional.last() {
                let pos = t.exceptional.len() - 1;
                if last != tail_value(g, cusp, pos, t.constant) {
                    break;
                }
                t.exceptional.pop();
            }
        }
    }

    fn combine(&self, other: &Cochain, g: &QuotientGraph, a: i64, b: i64) -> Cochain {
        let finite = self.finite.iter().zip(&other.finite).map(|(x, y)| a * x + b * y).collect();
        let tails = (0..self.tails.len())
            .map(|c| {
                let len = self.tails[c].exceptional.len().max(other.tails[c].exceptional.len());
                let exceptional = (0..len)
                    .map(|pos| {
                        let slot = EdgeSlot::Tail { cusp: c, pos };
                        a * self.value(g, slot) + b * other.value(g, slot)
                    })
                    .collect();
                Tail { exceptional, constant: a * self.tails[c].constant + b * other.tails[c].constant }
            })
            .collect();
        let mut out = Cochain { finite, tails };
        out.canonicalize(g);
        out
    }

    pub fn add(&self, other: &Cochain, g: &QuotientGraph) -> Cochain {
        self.combine(other, g, 1, 1)
    }
    pub fn sub(&self, other: &Cochain, g: &QuotientGraph) -> Cochain {
        self.combine(other, g, 1, -1)
    }
    pub fn scale(&self, k: i64, g: &QuotientGraph) -> Cochain {
        self.combine(self, g, k, 0)
    }

    /// Exact division of every value by `k`; `None` if some value is not divisible.
    pub fn div_exact(&self, k: i64) -> Option<Cochain> {
        let div = |x: &i64| (x % k == 0).then(|| x / k);
        Some(Cochain {
            finite: self.finite.iter().map(div).collect::<Option<_>>()?,
            tails: self
                .tails
                .iter()
                .map(|t| {
                    Some(Tail {
                        exceptional: t.exceptional.iter().map(div).collect::<Option<_>>()?,
                        constant: div(&t.constant)?,
                    })
                })
                .collect::<Option<_>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.finite.iter().all(|&x| x == 0)
            && self.tails.iter().all(|t| t.constant == 0 && t.exceptional.iter().all(|&x| x == 0))
    }

    /// Finitely supported on the quotient: every tail constant vanishes.
    pub fn is_cuspidal(&self) -> bool {
        self.tails.iter().all(|t| t.constant == 0)
    }

    /// Reduction modulo 2 on the directed edges with origin `v`.
    pub fn values_around(&self, g: &QuotientGraph, v: usize) -> Vec<i64> {
        g.outgoing(v).iter().map(|&(e, s)| s * self.value_on_edge(g, e)).collect()
    }

    pub fn to_record(&self, g: &QuotientGraph) -> CochainRecord {
        CochainRecord {
            finite: g.finite_edges().iter().zip(&self.finite).map(|(&e, &v)| (e, v)).collect(),
            tails: self.tails.clone(),
        }
    }

    pub fn from_record(g: &QuotientGraph, r: &CochainRecord) -> Result<Cochain, HeckeError> {
        let mut c = Cochain::zero(g);
        for (&e, &v) in &r.finite {
            match g.edges().get(e).map(|_| g.edge_slot(e)) {
                Some((EdgeSlot::Finite(i), _)) => c.finite[i] = v,
                _ => return Err(HeckeError::Invariant(format!("edge {e} is not in the finite part"))),
            }
        }
        if r.tails.len() != c.tails.len() {
            return Err(HeckeError::Invariant("wrong number of tails".into()));
        }
        c.tails = r.tails.clone();
        c.canonicalize(g);
        Ok(c)
    }
}

/// Raw value at half-line position `pos` for normalized value `k`.
pub fn tail_value(g: &QuotientGraph, cusp: usize, pos: usize, k: i64) -> i64 {
    if k == 0 {
        return 0;
    }
    k * (g.slot_stab(EdgeSlot::Tail { cusp, pos }) / g.z_order()) as i64
}

/// Normalized value `c * z / |Gamma_f|` if integral.
pub fn normalized(g: &QuotientGraph, slot: EdgeSlot, value: i64) -> Option<i64> {
    let w = (g.slot_stab(slot) / g.z_order()) as i64;
    (value % w == 0).then(|| value / w)
}

fn tail_vertex_stab(g: &QuotientGraph, cusp: usize, i: usize) -> u64 {
    let h = &g.half_lines()[cusp];
    match h.vertices.get(i) {
        Some(&v) => g.vertices()[v].stab_order,
        None => g.vertex_stab(VertexLoc::Far { cusp, level: g.stable_level() + i - h.base }),
    }
}

/// Weighted harmonicity at every vertex: `sum_{o(f) = v} |Gamma_v| / |Gamma_f| * c(f) = 0`.
/// Checked at every materialized vertex and along each tail past its exceptional part.
pub fn is_harmonic(g: &QuotientGraph, c: &Cochain) -> bool {
    for v in g.vertices().iter().filter(|v| v.level < g.max_level()) {
        let mut sum: i128 = 0;
        for &(e, s) in g.outgoing(v.id) {
            let w = v.stab_order / g.edges()[e].stab_order;
            sum += w as i128 * (s * c.value_on_edge(g, e)) as i128;
        }
        if sum != 0 {
            return false;
        }
    }
    for (cusp, h) in g.half_lines().iter().enumerate() {
        let upto = h.edges.len().max(c.tails[cusp].exceptional.len()) + 2;
        for i in h.edges.len()..=upto {
            let sv = tail_vertex_stab(g, cusp, i) as i128;
            let inner = EdgeSlot::Tail { cusp, pos: i - 1 };
            let outer = EdgeSlot::Tail { cusp, pos: i };
            let a = sv / g.slot_stab(inner) as i128 * c.value(g, inner) as i128;
            let b = sv / g.slot_stab(outer) as i128 * c.value(g, outer) as i128;
            if a != b {
                return false;
            }
        }
    }
    true
}
