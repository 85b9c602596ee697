//! Hecke operators on cochains, an integral basis of cuspidal harmonic
//! cochains, and Hecke matrices in that basis.

use std::collections::VecDeque;

use super::cochain::{is_harmonic, normalized, Cochain, Tail};
use super::symbol::{modular_symbol, symbol_zero_infinity};
use crate::arith::{IdealA, Poly};
use crate::error::HeckeError;
use crate::quotient::{EdgeSlot, QuotientGraph, VertexTag};
use crate::tree::Mat2;

/// Integer `g x g` matrix acting on coordinate columns.
pub type IntMatrix = Vec<Vec<i64>>;

fn check_prime(g: &QuotientGraph, r: &Poly) -> Result<(), HeckeError> {
    if r.degree().unwrap_or(0) == 0 || !r.is_irreducible()? {
        return Err(crate::ArithError::NotPrime(r.to_string()).into());
    }
    if g.modulus().generator().rem(r).is_zero() {
        return Err(HeckeError::PrimeDividesLevel(r.to_string()));
    }
    Ok(())
}

/// Representatives of `Gamma_0(n) \ H(r, n)`: `(r 0; 0 1)` and `(1 b; 0 r)` with `deg b < deg r`.
pub fn hecke_coset_reps(r: &Poly) -> Vec<Mat2> {
    let f = r.field();
    let (zero, one) = (Poly::zero(f), Poly::one(f));
    let mut out = vec![Mat2::from_polys(r, &zero, &zero, &one)];
    out.extend(Poly::all_below_degree(f, r.degree().unwrap()).map(|b| Mat2::from_polys(&one, &b, &zero, r)));
    out
}

/// Membership in `H(m, n)`: integral, `(det) = (m)`, `c` in `n`, `d` prime to `n`.
pub fn in_hecke_set(h: &Mat2, m: &Poly, n: &IdealA) -> bool {
    let Some([[_, _], [c, d]]) = h.to_poly() else { return false };
    let Some(det) = h.det().as_poly().cloned() else { return false };
    !det.is_zero() && det.monic() == m.monic() && n.contains(&c) && n.coprime_to(&d)
}

/// `(T_r c)(e) = sum_h c(h e)` over the coset representatives.
pub fn hecke_apply(g: &QuotientGraph, r: &Poly, c: &Cochain) -> Result<Cochain, HeckeError> {
    check_prime(g, r)?;
    let reps = hecke_coset_reps(r);
    let at = |slot: EdgeSlot| -> i64 {
        let e = g.lift_slot(slot);
        reps.iter().map(|h| c.value_directed(g, g.classify_tree_edge(&e.apply(h).expect("invertible")))).sum()
    };
    let mut out = Cochain::zero(g);
    for (i, v) in out.finite.iter_mut().enumerate() {
        *v = at(EdgeSlot::Finite(i));
    }
    let d = r.degree().unwrap();
    let reach = g
        .half_lines()
        .iter()
        .zip(&c.tails)
        .map(|(h, t)| h.edges.len().max(t.exceptional.len()))
        .max()
        .unwrap_or(0);
    let len = reach + 2 * d + 3;
    for cusp in 0..out.tails.len() {
        let exceptional: Vec<i64> = (0..len).map(|pos| at(EdgeSlot::Tail { cusp, pos })).collect();
        let norm = |pos: usize| normalized(g, EdgeSlot::Tail { cusp, pos }, exceptional[pos]);
        let constant = norm(len - 1).ok_or_else(|| HeckeError::Invariant("tail value is not integral".into()))?;
        if (len - 3..len).any(|pos| norm(pos) != Some(constant)) {
            return Err(HeckeError::Invariant("Hecke image has no constant tail".into()));
        }
        out.tails[cusp] = Tail { exceptional, constant };
    }
    out.canonicalize(g);
    if is_harmonic(g, c) && !is_harmonic(g, &out) {
        return Err(HeckeError::Invariant(format!("T_{r} of a harmonic cochain is not harmonic")));
    }
    Ok(out)
}

/// Integral basis of the cuspidal harmonic cochains, one cycle per chord of a
/// spanning tree of the finite part.
#[derive(Clone, Debug)]
pub struct H1Basis {
    /// Finite slot index of each chord; the basis element is `+1` times its weight there.
    pub chords: Vec<usize>,
    pub elements: Vec<Cochain>,
}

impl H1Basis {
    pub fn new(g: &QuotientGraph) -> Result<Self, HeckeError> {
        let fe = g.finite_edges();
        let nv = g.vertices().len();
        let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); nv];
        for (i, &e) in fe.iter().enumerate() {
            let (o, t) = (g.edges()[e].origin, g.edges()[e].terminus);
            adj[o].push((t, i, 1));
            adj[t].push((o, i, -1));
        }
        // parent[v] = (u, slot, sign of slot when walking u -> v)
        let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; nv];
        let mut seen = vec![false; nv];
        let mut in_tree = vec![false; fe.len()];
        if let Some(&root) = g.finite_vertices().iter().min() {
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(v, i, s) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        parent[v] = Some((u, i, s));
                        in_tree[i] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        if g.finite_vertices().iter().any(|&v| !seen[v]) {
            return Err(HeckeError::Invariant("finite part is disconnected".into()));
        }
        let z = g.z_order() as i64;
        let mut chords = Vec::new();
        let mut elements = Vec::new();
        for i in (0..fe.len()).filter(|&i| !in_tree[i]) {
            let mut count = vec![0i64; fe.len()];
            count[i] += 1;
            let (o, t) = (g.edges()[fe[i]].origin, g.edges()[fe[i]].terminus);
            // t -> root against the tree, then root -> o along it
            let mut v = t;
            while let Some((u, j, s)) = parent[v] {
                count[j] -= s;
                v = u;
            }
            let mut v = o;
            while let Some((u, j, s)) = parent[v] {
                count[j] += s;
                v = u;
            }
            let mut c = Cochain::zero(g);
            for (j, n) in count.into_iter().enumerate() {
                c.finite[j] = n * g.slot_stab(EdgeSlot::Finite(j)) as i64 / z;
            }
            if !is_harmonic(g, &c) {
                return Err(HeckeError::Invariant(format!("cycle through chord {i} is not harmonic")));
            }
            chords.push(i);
            elements.push(c);
        }
        if chords.len() != g.betti() {
            return Err(HeckeError::Invariant(format!("{} chords but Betti number {}", chords.len(), g.betti())));
        }
        Ok(H1Basis { chords, elements })
    }

    pub fn rank(&self) -> usize {
        self.chords.len()
    }

    /// Coordinates of a cuspidal harmonic cochain; errors if it is not an integral combination.
    pub fn coordinates(&self, g: &QuotientGraph, c: &Cochain) -> Result<Vec<i64>, HeckeError> {
        let not_in_span = || HeckeError::Invariant("cochain is not in the integral cuspidal span".into());
        let x: Vec<i64> = self
            .chords
            .iter()
            .map(|&i| normalized(g, EdgeSlot::Finite(i), c.finite[i]).ok_or_else(not_in_span))
            .collect::<Result<_, _>>()?;
        if self.combine(g, &x) != *c {
            return Err(not_in_span());
        }
        Ok(x)
    }

    pub fn combine(&self, g: &QuotientGraph, x: &[i64]) -> Cochain {
        let mut out = Cochain::zero(g);
        for (b, &k) in self.elements.iter().zip(x) {
            for (o, v) in out.finite.iter_mut().zip(&b.finite) {
                *o += k * v;
            }
        }
        out
    }
}

/// Matrix of `T_r` on the basis; column `j` holds the coordinates of `T_r b_j`.
pub fn hecke_matrix(g: &QuotientGraph, basis: &H1Basis, r: &Poly) -> Result<IntMatrix, HeckeError> {
    let n = basis.rank();
    let mut m = vec![vec![0i64; n]; n];
    for (j, b) in basis.elements.iter().enumerate() {
        let x = basis.coordinates(g, &hecke_apply(g, r, b)?)?;
        for i in 0..n {
            m[i][j] = x[i];
        }
    }
    Ok(m)
}

/// `(T_r - |r| - 1) [0, inf] / (q - 1)`, a cuspidal harmonic cochain.
pub fn winding_image(g: &QuotientGraph, r: &Poly) -> Result<Cochain, HeckeError> {
    let e = symbol_zero_infinity(g)?;
    let norm = (g.field().q() as i64).pow(r.degree().unwrap_or(0) as u32);
    let t = hecke_apply(g, r, &e)?.sub(&e.scale(norm + 1, g), g);
    if !t.is_cuspidal() {
        return Err(HeckeError::Invariant(format!("winding image at {r} is not cuspidal")));
    }
    t.div_exact(g.field().q() as i64 - 1)
        .ok_or_else(|| HeckeError::Invariant(format!("winding image at {r} is not divisible by q - 1")))
}

/// Values of `[0, 1/T]` on the three directed edges leaving the vertex `u_{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub values: Vec<i64>,
    pub vanishing_mod_2: usize,
}

impl WitnessReport {
    pub fn holds(&self) -> bool {
        self.vanishing_mod_2 == 1
    }
}

/// For `q = 2` and prime level of degree at least 3: `[0, 1/T]` is nonzero modulo 2,
/// shown by the directed edges around `u_{-1}`.
pub fn formal_immersion_witness(g: &QuotientGraph) -> Result<WitnessReport, HeckeError> {
    let f = g.field();
    if f.q() != 2 || !g.modulus().is_prime() || g.modulus().degree() < 3 {
        return Err(HeckeError::WitnessPreconditions);
    }
    let u = g.tagged(VertexTag::U(-1)).ok_or(HeckeError::WitnessPreconditions)?;
    let c = modular_symbol(g, &(Poly::zero(f), Poly::one(f)), &(Poly::one(f), Poly::t(f)))?;
    let values = c.values_around(g, u);
    let vanishing_mod_2 = values.iter().filter(|v| *v % 2 == 0).count();
    Ok(WitnessReport { values, vanishing_mod_2 })
}
