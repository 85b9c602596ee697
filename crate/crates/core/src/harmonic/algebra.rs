//! The Hecke algebra on cuspidal cochains, its Eisenstein ideal, and the
//! saturated lattice generated by winding images.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::hecke::{hecke_matrix, winding_image, H1Basis, IntMatrix};
use super::lattice::{hnf, index_in, mat_mul, mat_vec, saturate, to_z, ZMatrix};
use crate::arith::Poly;
use crate::error::HeckeError;
use crate::quotient::QuotientGraph;

/// Monic primes of degree at most `max_deg` not dividing the level.
pub fn good_primes(g: &QuotientGraph, max_deg: usize) -> Vec<Poly> {
    let n = g.modulus().generator();
    (1..=max_deg)
        .flat_map(|d| Poly::irreducibles_of_degree(g.field(), d))
        .filter(|r| !n.rem(r).is_zero())
        .collect()
}

fn flatten(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    m.iter().flatten().cloned().collect()
}

fn unflatten(v: &[BigInt], n: usize) -> ZMatrix {
    v.chunks(n).map(|c| c.to_vec()).collect()
}

fn identity(n: usize) -> ZMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaLattice {
    pub rank: usize,
    /// Hermite basis, in coordinates of the cycle basis.
    pub basis: Vec<Vec<String>>,
    /// Unchanged when the primes of the next degree are added.
    pub stable: bool,
}

fn lambda_hnf(g: &QuotientGraph, basis: &H1Basis, primes: &[Poly]) -> Result<ZMatrix, HeckeError> {
    let mut rows = Vec::new();
    let mut mats = Vec::new();
    for r in primes {
        rows.push(to_z(&[basis.coordinates(g, &winding_image(g, r)?)?]).remove(0));
        mats.push(to_z(&hecke_matrix(g, basis, r)?));
    }
    let mut l = hnf(&rows);
    loop {
        let mut next = l.clone();
        for m in &mats {
            next.extend(l.iter().map(|v| mat_vec(m, v)));
        }
        let next = hnf(&next);
        if next == l {
            break;
        }
        l = next;
    }
    Ok(if l.is_empty() { l } else { saturate(&l) })
}

/// Saturation of the span of winding images `(T_r - |r| - 1)[0, inf] / (q - 1)` and
/// their Hecke translates, over the given primes.
pub fn lambda_lattice(g: &QuotientGraph, basis: &H1Basis, primes: &[Poly]) -> Result<LambdaLattice, HeckeError> {
    if primes.is_empty() {
        return Err(HeckeError::EmptyPrimeList);
    }
    let l = lambda_hnf(g, basis, primes)?;
    let top = primes.iter().filter_map(|r| r.degree()).max().unwrap_or(0);
    let mut wider = primes.to_vec();
    wider.extend(good_primes(g, top + 1).into_iter().filter(|r| r.degree() == Some(top + 1)));
    let stable = lambda_hnf(g, basis, &wider)? == l;
    Ok(LambdaLattice {
        rank: l.len(),
        basis: l.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        stable,
    })
}

/// Hermite bases of the algebra generated by the given matrices and of the ideal
/// generated by `T_r - |r| - 1`, both as flattened matrices.
fn algebra_and_ideal(g: &QuotientGraph, mats: &[(Poly, ZMatrix)]) -> (ZMatrix, ZMatrix) {
    let n = g.betti();
    let q = BigInt::from(g.field().q());
    let mut alg = hnf(&[flatten(&identity(n))]);
    loop {
        let mut next = alg.clone();
        for b in &alg {
            let b = unflatten(b, n);
            next.extend(mats.iter().map(|(_, m)| flatten(&mat_mul(&b, m))));
        }
        let next = hnf(&next);
        if next == alg {
            break;
        }
        alg = next;
    }
    let mut gens = Vec::new();
    for b in &alg {
        let b = unflatten(b, n);
        for (r, m) in mats {
            let mut e = m.clone();
            let shift = q.pow(r.degree().unwrap() as u32) + 1;
            for (i, row) in e.iter_mut().enumerate() {
                row[i] -= &shift;
            }
            gens.push(flatten(&mat_mul(&b, &e)));
        }
    }
    (alg, hnf(&gens))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EisensteinReport {
    pub degree_bound: usize,
    pub primes_used: usize,
    pub algebra_rank: usize,
    /// `[T : E]`, or `None` when infinite.
    pub index: Option<String>,
    /// `T = Z + E`.
    pub cyclic: bool,
    /// Algebra and ideal unchanged when the degree bound grows by one.
    pub stable: bool,
}

/// Index of the Eisenstein ideal in the Hecke algebra generated by `T_r` for
/// good primes `r != p` of degree at most `degree_bound`.
pub fn eisenstein_index(g: &QuotientGraph, basis: &H1Basis, degree_bound: usize) -> Result<EisensteinReport, HeckeError> {
    if basis.rank() == 0 {
        return Err(HeckeError::NoCuspForms);
    }
    let mut mats: Vec<(Poly, ZMatrix)> = Vec::new();
    for r in good_primes(g, degree_bound + 1) {
        mats.push((r.clone(), to_z(&hecke_matrix(g, basis, &r)?)));
    }
    let split = mats.iter().position(|(r, _)| r.degree().unwrap() > degree_bound).unwrap_or(mats.len());
    if split == 0 {
        return Err(HeckeError::EmptyPrimeList);
    }
    let (alg, ideal) = algebra_and_ideal(g, &mats[..split]);
    let (alg2, ideal2) = algebra_and_ideal(g, &mats);
    let index = index_in(&alg, &ideal);
    let mut with_one = ideal.clone();
    with_one.push(flatten(&identity(basis.rank())));
    Ok(EisensteinReport {
        degree_bound,
        primes_used: split,
        algebra_rank: alg.len(),
        index: index.map(|i| i.to_string()),
        cyclic: hnf(&with_one) == alg,
        stable: alg == alg2 && ideal == ideal2,
    })
}

/// Hecke matrices for the given primes, in the cycle basis.
pub fn hecke_matrices(g: &QuotientGraph, basis: &H1Basis, primes: &[Poly]) -> Result<Vec<IntMatrix>, HeckeError> {
    primes.iter().map(|r| hecke_matrix(g, basis, r)).collect()
}
