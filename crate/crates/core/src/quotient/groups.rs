//! The vertex stabilizers `G_l` of `v_l` in `GL_2(A)`, the edge stabilizers
//! `H_l = G_l ∩ G_{l+1}`, and orbit partitions of `P^1(A/n)` under them.

use crate::arith::{Field, P1Space, Poly};
use crate::tree::Mat2;

pub type PolyMat = [[Poly; 2]; 2];

fn diag(f: &'static Field, x: u32, y: u32) -> PolyMat {
    [[Poly::constant(f, x), Poly::zero(f)], [Poly::zero(f), Poly::constant(f, y)]]
}

fn unipotent(b: Poly) -> PolyMat {
    let f = b.field();
    [[Poly::one(f), b], [Poly::zero(f), Poly::one(f)]]
}

fn borel_generators(f: &'static Field, max_deg: usize) -> Vec<PolyMat> {
    let alpha = f.primitive_element();
    let mut gens = Vec::new();
    if alpha != 1 {
        gens.push(diag(f, alpha, 1));
        gens.push(diag(f, 1, alpha));
    }
    for i in 0..=max_deg {
        for beta in f.additive_basis() {
            gens.push(unipotent(Poly::monomial(f, beta, i)));
        }
    }
    gens
}

/// Generators of `G_l`: `GL_2(F_q)` for `l = 0`, otherwise upper triangular with `deg b <= l`.
pub fn vertex_group_generators(f: &'static Field, level: usize) -> Vec<PolyMat> {
    let mut gens = borel_generators(f, level);
    if level == 0 {
        gens.push([[Poly::zero(f), Poly::one(f)], [Poly::one(f), Poly::zero(f)]]);
    }
    gens
}

/// Generators of the stabilizer of the edge `v_l -> v_{l+1}`.
pub fn edge_group_generators(f: &'static Field, level: usize) -> Vec<PolyMat> {
    borel_generators(f, level)
}

pub fn vertex_group_order(q: u64, level: usize) -> u64 {
    if level == 0 {
        (q * q - 1) * (q * q - q)
    } else {
        (q - 1) * (q - 1) * q.pow(level as u32 + 1)
    }
}

pub fn edge_group_order(q: u64, level: usize) -> u64 {
    (q - 1) * (q - 1) * q.pow(level as u32 + 1)
}

pub fn to_mat2(m: &PolyMat) -> Mat2 {
    Mat2::from_polys(&m[0][0], &m[0][1], &m[1][0], &m[1][1])
}

/// Orbits of a group action on `P^1(A/n)` given by generators, as point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Orbit index of every point.
    pub orbit_of: Vec<usize>,
    /// Orbits sorted by their least point; each orbit sorted.
    pub orbits: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbit partition of the right action `(c:d) . g`, by union-find over generator moves.
pub fn orbit_partition(space: &P1Space, gens: &[PolyMat]) -> Partition {
    let n = space.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for g in gens {
        for (i, pt) in space.points().iter().enumerate() {
            let j = space.index_of(&space.act(pt, g)).expect("image is a normalized point");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if orbit_of[r] == usize::MAX {
            orbit_of[r] = orbits.len();
            orbits.push(Vec::new());
        }
        let o = orbit_of[r];
        orbit_of[i] = o;
        orbits[o].push(i);
    }
    Partition { orbit_of, orbits }
}
