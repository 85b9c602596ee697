//! The quotient graph `Gamma_0(n) \ T` in the double-coset model.
//!
//! Every vertex of the tree is `GL_2(A)`-equivalent to exactly one `v_l`, so a
//! vertex of the quotient is a pair `(l, O)` where `O` is a `G_l`-orbit on
//! `P^1(A/n) = Gamma_0(n) \ GL_2(A)`. Likewise an edge is `(l, O)` with `O` an
//! orbit of the stabilizer `H_l` of `v_l -> v_{l+1}`; it is stored oriented from
//! level `l` to level `l + 1`.
//!
//! From level `L_s = max(deg n - 1, 1)` on, all partitions coincide and each
//! stable orbit spans one cusp half-line. Levels up to `L_s + 1 + extra_depth`
//! are materialized and checked to repeat the stable pattern.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Mutex;

use super::groups::{
    edge_group_generators, edge_group_order, orbit_partition, vertex_group_generators, vertex_group_order,
    Partition,
};
use super::reduce::{coset_point, gl2a_reduce, lift_point};
use crate::arith::{Field, IdealA, P1Space, Poly, ProjPoint, RatFn};
use crate::error::GraphError;
use crate::tree::{EdgeNF, Mat2, VertexNF};

/// Named vertices: `V(l)` is the image of `v_l`, `U(m)` the image of
/// `u_m = (0 1; 1 0) v_{m + deg n}` and `W` the image of `w = (0 1; 1 t) v_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexTag {
    V(usize),
    U(i64),
    W,
}

#[derive(Clone, Debug)]
pub struct QVertex {
    pub id: usize,
    pub level: usize,
    pub orbit_rep: ProjPoint,
    pub orbit_size: usize,
    pub stab_order: u64,
    pub is_cuspidal: bool,
    pub tags: Vec<VertexTag>,
}

/// A geometric edge, oriented from `level` to `level + 1`.
#[derive(Clone, Debug)]
pub struct QEdge {
    pub id: usize,
    pub level: usize,
    pub orbit_rep: ProjPoint,
    pub orbit_size: usize,
    pub stab_order: u64,
    pub origin: usize,
    pub terminus: usize,
}

/// A maximal half-line, listed outwards from its junction.
#[derive(Clone, Debug)]
pub struct HalfLine {
    /// Least point of the stable orbit of this cusp.
    pub cusp_rep: ProjPoint,
    pub junction: usize,
    /// Stored edges in outward order with `+1` when outward is the stored orientation.
    pub edges: Vec<(usize, i64)>,
    /// `vertices[i]` and `vertices[i + 1]` are the ends of the outward edge `i`.
    pub vertices: Vec<usize>,
    /// Index of the edge at level `L_s`; position `base + j` is the edge at level `L_s + j`.
    pub base: usize,
}

/// Where a quotient edge lives: a geometric edge of the finite part, or a
/// position along a half-line (oriented outwards).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSlot {
    Finite(usize),
    Tail { cusp: usize, pos: usize },
}

/// A directed quotient edge: its slot and `+1` or `-1` relative to the slot orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Classified {
    pub slot: EdgeSlot,
    pub sign: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexLoc {
    Stored(usize),
    /// A cuspidal vertex above the materialized levels.
    Far { cusp: usize, level: usize },
}

pub struct QuotientGraph {
    field: &'static Field,
    modulus: IdealA,
    space: P1Space,
    stable_level: usize,
    max_level: usize,
    vertex_parts: Vec<Partition>,
    edge_parts: Vec<Partition>,
    vertex_ids: Vec<Vec<usize>>,
    edge_ids: Vec<Vec<usize>>,
    vertices: Vec<QVertex>,
    edges: Vec<QEdge>,
    outgoing: Vec<Vec<(usize, i64)>>,
    half_lines: Vec<HalfLine>,
    finite_vertices: Vec<usize>,
    finite_edges: Vec<usize>,
    edge_slots: Vec<(EdgeSlot, i64)>,
    betti: usize,
    cache: Mutex<HashMap<EdgeNF, Classified>>,
}

pub const DEFAULT_EXTRA_DEPTH: usize = 2;

impl QuotientGraph {
    /// `Gamma_0(n) \ T` for a proper nonzero ideal `n`.
    pub fn build(n: &IdealA, extra_depth: usize) -> Result<Self, GraphError> {
        let space = P1Space::new(n)?;
        Self::from_space(space, extra_depth)
    }

    /// `GL_2(A) \ T`, the degenerate run with a one-point coset space.
    pub fn full_level(field: &'static Field, extra_depth: usize) -> Result<Self, GraphError> {
        Self::from_space(P1Space::full_level(field), extra_depth)
    }

    fn from_space(space: P1Space, extra_depth: usize) -> Result<Self, GraphError> {
        let modulus = space.modulus().clone();
        let field = modulus.field();
        let q = field.q() as u64;
        let d = modulus.degree();
        let stable_level = d.saturating_sub(1).max(1);
        let max_level = stable_level + 1 + extra_depth;

        let vertex_parts: Vec<Partition> =
            (0..=max_level).map(|l| orbit_partition(&space, &vertex_group_generators(field, l))).collect();
        let edge_parts: Vec<Partition> = (0..max_level)
            .map(|l| if l == 0 { orbit_partition(&space, &edge_group_generators(field, 0)) } else { vertex_parts[l].clone() })
            .collect();
        let stable = &vertex_parts[stable_level];
        if (stable_level..=max_level).any(|l| &vertex_parts[l] != stable)
            || (stable_level..max_level).any(|l| &edge_parts[l] != stable)
        {
            return Err(GraphError::StabilizationNotReached(max_level));
        }

        let mut vertices = Vec::new();
        let mut vertex_ids = Vec::new();
        for (level, part) in vertex_parts.iter().enumerate() {
            let order = vertex_group_order(q, level);
            let mut ids = Vec::new();
            for orbit in &part.orbits {
                let stab = stab_from_orbit(order, orbit.len())?;
                ids.push(vertices.len());
                vertices.push(QVertex {
                    id: vertices.len(),
                    level,
                    orbit_rep: space.points()[orbit[0]].clone(),
                    orbit_size: orbit.len(),
                    stab_order: stab,
                    is_cuspidal: false,
                    tags: Vec::new(),
                });
            }
            vertex_ids.push(ids);
        }

        let mut edges = Vec::new();
        let mut edge_ids = Vec::new();
        let mut outgoing = vec![Vec::new(); vertices.len()];
        for (level, part) in edge_parts.iter().enumerate() {
            let order = edge_group_order(q, level);
            let mut ids = Vec::new();
            for orbit in &part.orbits {
                let rep = orbit[0];
                let stab = stab_from_orbit(order, orbit.len())?;
                let origin = vertex_ids[level][vertex_parts[level].orbit_of[rep]];
                let terminus = vertex_ids[level + 1][vertex_parts[level + 1].orbit_of[rep]];
                if vertices[origin].stab_order % stab != 0 || vertices[terminus].stab_order % stab != 0 {
                    return Err(GraphError::Invariant(format!("edge stabilizer {stab} does not divide endpoint stabilizers")));
                }
                let id = edges.len();
                ids.push(id);
                outgoing[origin].push((id, 1));
                outgoing[terminus].push((id, -1));
                edges.push(QEdge {
                    id,
                    level,
                    orbit_rep: space.points()[rep].clone(),
                    orbit_size: orbit.len(),
                    stab_order: stab,
                    origin,
                    terminus,
                });
            }
            edge_ids.push(ids);
        }

        let mut graph = QuotientGraph {
            field,
            modulus,
            space,
            stable_level,
            max_level,
            vertex_parts,
            edge_parts,
            vertex_ids,
            edge_ids,
            vertices,
            edges,
            outgoing,
            half_lines: Vec::new(),
            finite_vertices: Vec::new(),
            finite_edges: Vec::new(),
            edge_slots: Vec::new(),
            betti: 0,
            cache: Mutex::new(HashMap::new()),
        };
        graph.check_degrees()?;
        graph.find_half_lines()?;
        graph.assign_tags();
        Ok(graph)
    }

    /// Each lift has `q + 1` tree edges; they fall into `stab(v)/stab(f)` classes per quotient edge `f`.
    fn check_degrees(&self) -> Result<(), GraphError> {
        let q = self.field.q() as u64;
        for v in self.vertices.iter().filter(|v| v.level < self.max_level) {
            let mut total = 0;
            for &(e, _) in &self.outgoing[v.id] {
                let s = self.edges[e].stab_order;
                if v.stab_order % s != 0 {
                    return Err(GraphError::Invariant(format!("vertex {} stabilizer not divisible by edge {e}", v.id)));
                }
                total += v.stab_order / s;
            }
            if total != q + 1 {
                return Err(GraphError::Invariant(format!("vertex {} has {total} tree edges, expected {}", v.id, q + 1)));
            }
        }
        Ok(())
    }

    fn other_end(&self, e: usize, sign: i64) -> usize {
        if sign > 0 {
            self.edges[e].terminus
        } else {
            self.edges[e].origin
        }
    }

    fn find_half_lines(&mut self) -> Result<(), GraphError> {
        let ls = self.stable_level;
        let stable = self.vertex_parts[ls].clone();
        let cusp_count = stable.orbits.len();
        let mut half_lines = Vec::with_capacity(cusp_count);
        for c in 0..cusp_count {
            let start = self.vertex_ids[ls][c];
            let first_edge = self.edge_ids[ls][c];
            // inward trace: path[i] -> path[i+1] via inward[i]
            let mut path = vec![start];
            let mut inward: Vec<(usize, i64)> = Vec::new();
            let mut arrived = (first_edge, 1i64);
            let mut line = false;
            loop {
                let cur = *path.last().unwrap();
                if self.degree(cur) != 2 {
                    break;
                }
                let next_edge = *self.outgoing[cur]
                    .iter()
                    .find(|&&x| x != arrived)
                    .ok_or_else(|| GraphError::Invariant("degree-two vertex without a second edge".into()))?;
                let next = self.other_end(next_edge.0, next_edge.1);
                inward.push(next_edge);
                if self.vertices[next].level > ls {
                    line = true;
                    path.push(next);
                    break;
                }
                if path.contains(&next) {
                    return Err(GraphError::Invariant("half-line trace revisits a vertex".into()));
                }
                path.push(next);
                arrived = (next_edge.0, -next_edge.1);
            }
            let junction_idx = if line {
                // a line between two cusps: both half-lines start at its lowest vertex
                (0..path.len()).min_by_key(|&i| (self.vertices[path[i]].level, path[i])).unwrap()
            } else {
                path.len() - 1
            };
            let junction = path[junction_idx];
            let mut out_edges: Vec<(usize, i64)> = inward[..junction_idx].iter().rev().map(|&(e, s)| (e, -s)).collect();
            let mut out_vertices: Vec<usize> = path[..=junction_idx].iter().rev().copied().collect();
            let base = out_edges.len();
            for l in ls..self.max_level {
                out_edges.push((self.edge_ids[l][c], 1));
                out_vertices.push(self.vertex_ids[l + 1][c]);
            }
            half_lines.push(HalfLine {
                cusp_rep: self.space.points()[stable.orbits[c][0]].clone(),
                junction,
                edges: out_edges,
                vertices: out_vertices,
                base,
            });
        }

        let mut slots: Vec<Option<(EdgeSlot, i64)>> = vec![None; self.edges.len()];
        let mut cuspidal = vec![false; self.vertices.len()];
        for (c, h) in half_lines.iter().enumerate() {
            for (pos, &(e, s)) in h.edges.iter().enumerate() {
                if slots[e].is_some() {
                    return Err(GraphError::Invariant("half-lines are not edge-disjoint".into()));
                }
                slots[e] = Some((EdgeSlot::Tail { cusp: c, pos }, s));
            }
            for &v in &h.vertices[1..] {
                cuspidal[v] = true;
            }
        }
        for h in &half_lines {
            if cuspidal[h.junction] {
                return Err(GraphError::Invariant("junction lies inside another half-line".into()));
            }
        }
        let mut finite_edges = Vec::new();
        for (e, slot) in slots.iter_mut().enumerate() {
            if slot.is_none() {
                *slot = Some((EdgeSlot::Finite(finite_edges.len()), 1));
                finite_edges.push(e);
            }
        }
        let finite_vertices: Vec<usize> = (0..self.vertices.len()).filter(|&v| !cuspidal[v]).collect();
        for &e in &finite_edges {
            if cuspidal[self.edges[e].origin] || cuspidal[self.edges[e].terminus] {
                return Err(GraphError::Invariant(format!("finite edge {e} touches a cuspidal vertex")));
            }
        }
        // connectivity of the finite part
        let mut seen = BTreeSet::from([finite_vertices[0]]);
        let mut queue = VecDeque::from([finite_vertices[0]]);
        while let Some(v) = queue.pop_front() {
            for &(e, s) in &self.outgoing[v] {
                if matches!(slots[e], Some((EdgeSlot::Finite(_), _))) {
                    let w = self.other_end(e, s);
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        if seen.len() != finite_vertices.len() {
            return Err(GraphError::Invariant("finite part is disconnected".into()));
        }
        for (v, flag) in cuspidal.iter().enumerate() {
            self.vertices[v].is_cuspidal = *flag;
        }
        self.betti = finite_edges.len() + 1 - finite_vertices.len();
        self.edge_slots = slots.into_iter().map(Option::unwrap).collect();
        self.finite_edges = finite_edges;
        self.finite_vertices = finite_vertices;
        self.half_lines = half_lines;
        Ok(())
    }

    fn assign_tags(&mut self) {
        let f = self.field;
        let zero_one = self.space.normalize(&Poly::zero(f), &Poly::one(f)).unwrap();
        for l in 0..=self.max_level {
            let v = self.vertex_of_point(l, &zero_one);
            self.vertices[v].tags.push(VertexTag::V(l));
        }
        let d = self.modulus.degree();
        if d == 0 {
            return;
        }
        let one_zero = self.space.normalize(&Poly::one(f), &Poly::zero(f)).unwrap();
        for l in (d - 1)..=self.max_level {
            let v = self.vertex_of_point(l, &one_zero);
            self.vertices[v].tags.push(VertexTag::U(l as i64 - d as i64));
        }
        if let Some(t) = self.w_element() {
            let pt = self.space.normalize(&Poly::one(f), &t).unwrap();
            let v = self.vertex_of_point(0, &pt);
            self.vertices[v].tags.push(VertexTag::W);
        }
        for v in &mut self.vertices {
            v.tags.sort();
        }
    }

    /// For `q = 2` and a prime of even degree: the least `t` with `deg t < deg p`
    /// and `t^2 + t + 1 = 0` modulo `p`.
    pub fn w_element(&self) -> Option<Poly> {
        let f = self.field;
        let d = self.modulus.degree();
        if f.q() != 2 || !self.modulus.is_prime() || !d.is_multiple_of(2) {
            return None;
        }
        let n = self.modulus.generator();
        Poly::all_below_degree(f, d).find(|t| (&(t * t) + &(t + &Poly::one(f))).rem(n).is_zero())
    }

    fn vertex_of_point(&self, level: usize, pt: &ProjPoint) -> usize {
        let i = self.space.index_of(pt).expect("normalized point");
        self.vertex_ids[level][self.vertex_parts[level].orbit_of[i]]
    }

    // ---- accessors ----

    pub fn field(&self) -> &'static Field {
        self.field
    }
    pub fn modulus(&self) -> &IdealA {
        &self.modulus
    }
    pub fn space(&self) -> &P1Space {
        &self.space
    }
    pub fn stable_level(&self) -> usize {
        self.stable_level
    }
    pub fn max_level(&self) -> usize {
        self.max_level
    }
    pub fn vertices(&self) -> &[QVertex] {
        &self.vertices
    }
    pub fn edges(&self) -> &[QEdge] {
        &self.edges
    }
    pub fn half_lines(&self) -> &[HalfLine] {
        &self.half_lines
    }
    pub fn finite_vertices(&self) -> &[usize] {
        &self.finite_vertices
    }
    pub fn finite_edges(&self) -> &[usize] {
        &self.finite_edges
    }
    /// First Betti number of the finite part, i.e. the rank of `H_1` of the quotient.
    pub fn betti(&self) -> usize {
        self.betti
    }
    /// Order of the centre `F_q^*` of `Gamma_0(n)`.
    pub fn z_order(&self) -> u64 {
        self.field.q() as u64 - 1
    }
    /// Directed edges with origin `v`, as `(edge id, +1 | -1)`.
    pub fn outgoing(&self, v: usize) -> &[(usize, i64)] {
        &self.outgoing[v]
    }
    /// Number of directed edges with origin `v`; vertices at the top level get their missing up edge.
    pub fn degree(&self, v: usize) -> usize {
        self.outgoing[v].len() + usize::from(self.vertices[v].level == self.max_level)
    }
    pub fn edge_slot(&self, e: usize) -> (EdgeSlot, i64) {
        self.edge_slots[e]
    }
    /// The finite-part vertex ids with a given tag.
    pub fn tagged(&self, tag: VertexTag) -> Option<usize> {
        self.vertices.iter().find(|v| v.tags.contains(&tag)).map(|v| v.id)
    }

    pub fn vertex_stab(&self, loc: VertexLoc) -> u64 {
        match loc {
            VertexLoc::Stored(v) => self.vertices[v].stab_order,
            VertexLoc::Far { cusp, level } => {
                let size = self.vertex_parts[self.stable_level].orbits[cusp].len();
                stab_from_orbit(vertex_group_order(self.field.q() as u64, level), size).expect("stable orbit")
            }
        }
    }

    /// Level of the edge at a half-line position above the junction region.
    fn tail_level(&self, cusp: usize, pos: usize) -> Option<usize> {
        let h = &self.half_lines[cusp];
        (pos >= h.base).then(|| self.stable_level + pos - h.base)
    }

    pub fn slot_stab(&self, slot: EdgeSlot) -> u64 {
        match slot {
            EdgeSlot::Finite(i) => self.edges[self.finite_edges[i]].stab_order,
            EdgeSlot::Tail { cusp, pos } => {
                let h = &self.half_lines[cusp];
                if pos < h.edges.len() {
                    return self.edges[h.edges[pos].0].stab_order;
                }
                let level = self.tail_level(cusp, pos).unwrap();
                let size = self.vertex_parts[self.stable_level].orbits[cusp].len();
                let q = self.field.q() as u64;
                let order = q
                    .checked_pow(level as u32 + 1)
                    .and_then(|x| x.checked_mul((q - 1) * (q - 1)))
                    .expect("stabilizer order overflow");
                order / size as u64
            }
        }
    }

    /// Stored edge id and orientation of a slot, when materialized.
    pub fn slot_edge(&self, slot: EdgeSlot) -> Option<(usize, i64)> {
        match slot {
            EdgeSlot::Finite(i) => Some((self.finite_edges[i], 1)),
            EdgeSlot::Tail { cusp, pos } => self.half_lines[cusp].edges.get(pos).copied(),
        }
    }

    // ---- lifts and classification ----

    pub fn lift_vertex(&self, v: usize) -> VertexNF {
        let g = lift_point(&self.space, &self.vertices[v].orbit_rep);
        VertexNF::v(self.vertices[v].level as i64).apply(&g).expect("invertible")
    }

    fn lift_up_edge(&self, level: usize, pt: &ProjPoint) -> EdgeNF {
        let g = lift_point(&self.space, pt);
        EdgeNF::standard_at(level).apply(&g).expect("invertible")
    }

    /// A tree edge mapping to edge `e` in its stored orientation.
    pub fn lift_edge(&self, e: usize) -> EdgeNF {
        self.lift_up_edge(self.edges[e].level, &self.edges[e].orbit_rep)
    }

    /// A tree edge mapping to `slot` in the slot orientation.
    pub fn lift_slot(&self, slot: EdgeSlot) -> EdgeNF {
        if let Some((e, s)) = self.slot_edge(slot) {
            let x = self.lift_edge(e);
            return if s > 0 { x } else { x.reverse() };
        }
        let EdgeSlot::Tail { cusp, pos } = slot else { unreachable!() };
        let level = self.tail_level(cusp, pos).unwrap();
        self.lift_up_edge(level, &self.half_lines[cusp].cusp_rep)
    }

    fn classify_level_point(&self, level: usize, pt: &ProjPoint, up: bool) -> Classified {
        let i = self.space.index_of(pt).expect("normalized point");
        let dir = if up { 1 } else { -1 };
        if level >= self.stable_level {
            let cusp = self.vertex_parts[self.stable_level].orbit_of[i];
            let pos = self.half_lines[cusp].base + level - self.stable_level;
            return Classified { slot: EdgeSlot::Tail { cusp, pos }, sign: dir };
        }
        let e = self.edge_ids[level][self.edge_parts[level].orbit_of[i]];
        let (slot, s) = self.edge_slots[e];
        Classified { slot, sign: s * dir }
    }

    /// The directed quotient edge of a tree edge.
    pub fn classify_tree_edge(&self, e: &EdgeNF) -> Classified {
        if let Some(c) = self.cache.lock().expect("cache").get(e) {
            return *c;
        }
        let c = self.classify_uncached(e);
        self.cache.lock().expect("cache").insert(e.clone(), c);
        c
    }

    fn classify_uncached(&self, e: &EdgeNF) -> Classified {
        let f = self.field;
        let (level, gamma) = gl2a_reduce(&e.origin, f);
        let w = e.terminus.apply(&gamma.inverse().expect("invertible")).expect("invertible");
        if w == VertexNF::v(level as i64 + 1) {
            return self.classify_level_point(level, &coset_point(&self.space, &gamma), true);
        }
        if level >= 1 {
            // w = (1, c T^l; 0, 1) v_{l-1}, and that matrix lies in G_l
            let c = w.u.coeff(-(level as i64));
            debug_assert_eq!(w.k, 1 - level as i64);
            let g = Mat2::translation(RatFn::from_poly(Poly::monomial(f, c, level)));
            let pt = coset_point(&self.space, &(&gamma * &g));
            return self.classify_level_point(level - 1, &pt, false);
        }
        // level 0: w = (c 1; 1 0) v_1
        let c = w.u.coeff(0);
        let g = Mat2::from_polys(&Poly::constant(f, c), &Poly::one(f), &Poly::one(f), &Poly::zero(f));
        debug_assert_eq!(VertexNF::v(1).apply(&g).unwrap(), w);
        self.classify_level_point(0, &coset_point(&self.space, &(&gamma * &g)), true)
    }

    pub fn classify_vertex(&self, v: &VertexNF) -> VertexLoc {
        let (level, gamma) = gl2a_reduce(v, self.field);
        let pt = coset_point(&self.space, &gamma);
        if level <= self.max_level {
            VertexLoc::Stored(self.vertex_of_point(level, &pt))
        } else {
            let i = self.space.index_of(&pt).unwrap();
            VertexLoc::Far { cusp: self.vertex_parts[self.stable_level].orbit_of[i], level }
        }
    }

    // ---- Atkin-Lehner ----

    fn atkin_lehner_matrix(&self) -> Result<Mat2, GraphError> {
        if !self.modulus.is_prime() {
            return Err(GraphError::CompositeLevel(self.modulus.to_string()));
        }
        let f = self.field;
        Ok(Mat2::from_polys(&Poly::zero(f), &Poly::one(f), self.modulus.generator(), &Poly::zero(f)))
    }

    /// Image of a stored vertex under the involution induced by `w_p = (0 1; f 0)`.
    pub fn atkin_lehner_vertex(&self, v: usize) -> Result<VertexLoc, GraphError> {
        let w = self.atkin_lehner_matrix()?;
        Ok(self.classify_vertex(&self.lift_vertex(v).apply(&w).expect("invertible")))
    }

    /// Image of a directed quotient edge (given by its slot orientation) under `w_p`.
    pub fn atkin_lehner_edge(&self, slot: EdgeSlot) -> Result<Classified, GraphError> {
        let w = self.atkin_lehner_matrix()?;
        Ok(self.classify_tree_edge(&self.lift_slot(slot).apply(&w).expect("invertible")))
    }
}

fn stab_from_orbit(order: u64, size: usize) -> Result<u64, GraphError> {
    if !order.is_multiple_of(size as u64) {
        return Err(GraphError::Invariant(format!("orbit size {size} does not divide group order {order}")));
    }
    Ok(order / size as u64)
}
