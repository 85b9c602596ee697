//! Ideals of `A = F_q[T]`, residue rings `A/n` and the projective line `P^1(A/n)`.

use std::collections::BTreeSet;
use std::fmt;


use super::field::Field;
use super::poly::Poly;
use crate::error::ArithError;

/// A nonzero ideal of `A`, stored by its monic generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealA {
    gen: Poly,
    is_prime: bool,
}

impl IdealA {
    pub fn new(gen: &Poly) -> Result<Self, ArithError> {
        if gen.is_zero() {
            return Err(ArithError::ZeroIdeal);
        }
        let gen = gen.monic();
        let is_prime = gen.degree().unwrap() >= 1 && gen.is_irreducible().unwrap_or(false);
        Ok(IdealA { gen, is_prime })
    }

    pub fn unit(field: &'static Field) -> Self {
        IdealA { gen: Poly::one(field), is_prime: false }
    }

    pub fn generator(&self) -> &Poly {
        &self.gen
    }
    pub fn field(&self) -> &'static Field {
        self.gen.field()
    }
    pub fn degree(&self) -> usize {
        self.gen.degree().unwrap()
    }
    pub fn is_prime(&self) -> bool {
        self.is_prime
    }
    pub fn is_unit(&self) -> bool {
        self.gen.is_one()
    }
    pub fn contains(&self, a: &Poly) -> bool {
        a.rem(&self.gen).is_zero()
    }
    pub fn divides(&self, other: &IdealA) -> bool {
        self.gen.divides(&other.gen)
    }
    /// `(a) + n = A`.
    pub fn coprime_to(&self, a: &Poly) -> bool {
        a.gcd(&self.gen).is_one()
    }
    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.gen)
    }
    /// Norm `q^{deg n}` of the ideal.
    pub fn norm(&self) -> u64 {
        (self.field().q() as u64).pow(self.degree() as u32)
    }

    /// Inverse of `a` modulo the ideal, if it is a unit.
    pub fn inverse(&self, a: &Poly) -> Option<Poly> {
        let (g, s, _) = a.rem(&self.gen).xgcd(&self.gen);
        g.is_one().then(|| s.rem(&self.gen))
    }
}

impl fmt::Display for IdealA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen)
    }
}

impl fmt::Debug for IdealA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of `A/n` with `deg rep < deg n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElem {
    modulus: IdealA,
    rep: Poly,
}

impl ResidueElem {
    pub fn new(modulus: &IdealA, a: &Poly) -> Self {
        ResidueElem { modulus: modulus.clone(), rep: modulus.reduce(a) }
    }
    pub fn rep(&self) -> &Poly {
        &self.rep
    }
    pub fn modulus(&self) -> &IdealA {
        &self.modulus
    }
    pub fn add(&self, o: &Self) -> Self {
        ResidueElem::new(&self.modulus, &(&self.rep + &o.rep))
    }
    pub fn sub(&self, o: &Self) -> Self {
        ResidueElem::new(&self.modulus, &(&self.rep - &o.rep))
    }
    pub fn mul(&self, o: &Self) -> Self {
        ResidueElem::new(&self.modulus, &(&self.rep * &o.rep))
    }
    pub fn is_unit(&self) -> bool {
        self.modulus.coprime_to(&self.rep)
    }
    pub fn inverse(&self) -> Option<Self> {
        self.modulus.inverse(&self.rep).map(|r| ResidueElem { modulus: self.modulus.clone(), rep: r })
    }
}

/// A point `(c : d)` of `P^1(A/n)` in normalized form; the modulus lives in [`P1Space`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub c: Poly,
    pub d: Poly,
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.c, self.d)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `P^1(A/n)`: the coset space `Gamma_0(n) \ GL_2(A)` via bottom rows.
///
/// The unit ideal is accepted and yields a single point; this is the coset
/// space of `GL_2(A)` itself.
#[derive(Clone, Debug)]
pub struct P1Space {
    modulus: IdealA,
    /// Units of `A/n`, only materialized for composite moduli.
    units: Vec<Poly>,
    points: Vec<ProjPoint>,
}

impl P1Space {
    /// Enumerate `P^1(A/n)`; errors on the unit ideal (see [`P1Space::full_level`]).
    pub fn new(modulus: &IdealA) -> Result<Self, ArithError> {
        if modulus.is_unit() {
            return Err(ArithError::UnitIdeal);
        }
        Ok(Self::build(modulus))
    }

    /// The one-point space for `n = A`.
    pub fn full_level(field: &'static Field) -> Self {
        Self::build(&IdealA::unit(field))
    }

    fn build(modulus: &IdealA) -> Self {
        let field = modulus.field();
        let mut space = P1Space { modulus: modulus.clone(), units: Vec::new(), points: Vec::new() };
        if modulus.is_unit() {
            space.points.push(ProjPoint { c: Poly::zero(field), d: Poly::zero(field) });
            return space;
        }
        let deg = modulus.degree();
        if !modulus.is_prime() {
            space.units = Poly::all_below_degree(field, deg).filter(|u| modulus.coprime_to(u)).collect();
        }
        let mut seen = BTreeSet::new();
        if modulus.is_prime() {
            seen.insert(ProjPoint { c: Poly::zero(field), d: Poly::one(field) });
            for x in Poly::all_below_degree(field, deg) {
                seen.insert(ProjPoint { c: Poly::one(field), d: x });
            }
        } else {
            for c in Poly::all_below_degree(field, deg) {
                for d in Poly::all_below_degree(field, deg) {
                    if let Some(pt) = space.normalize(&c, &d) {
                        seen.insert(pt);
                    }
                }
            }
        }
        space.points = seen.into_iter().collect();
        space
    }

    pub fn modulus(&self) -> &IdealA {
        &self.modulus
    }
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn index_of(&self, pt: &ProjPoint) -> Option<usize> {
        self.points.binary_search(pt).ok()
    }

    /// `gcd(c, d, n) = 1`.
    pub fn is_unimodular(&self, c: &Poly, d: &Poly) -> bool {
        self.modulus.is_unit() || c.gcd(d).gcd(self.modulus.generator()).is_one()
    }

    /// Canonical representative of the class of `(c, d)`; `None` if not unimodular.
    ///
    /// The first unit coordinate (`c` preferred) is scaled to 1; when neither
    /// coordinate is a unit the lexicographically least unit multiple is taken.
    pub fn normalize(&self, c: &Poly, d: &Poly) -> Option<ProjPoint> {
        let field = self.modulus.field();
        if self.modulus.is_unit() {
            return Some(ProjPoint { c: Poly::zero(field), d: Poly::zero(field) });
        }
        let n = &self.modulus;
        let (c, d) = (n.reduce(c), n.reduce(d));
        if !self.is_unimodular(&c, &d) {
            return None;
        }
        if let Some(ci) = n.inverse(&c) {
            return Some(ProjPoint { c: Poly::one(field), d: n.reduce(&(&d * &ci)) });
        }
        if let Some(di) = n.inverse(&d) {
            return Some(ProjPoint { c: n.reduce(&(&c * &di)), d: Poly::one(field) });
        }
        self.units
            .iter()
            .map(|u| ProjPoint { c: n.reduce(&(&c * u)), d: n.reduce(&(&d * u)) })
            .min()
    }

    /// Right action `(c : d) . g` for `g = (a b; e f)` with entries in `A`.
    pub fn act(&self, pt: &ProjPoint, g: &[[Poly; 2]; 2]) -> ProjPoint {
        let c = &(&pt.c * &g[0][0]) + &(&pt.d * &g[1][0]);
        let d = &(&pt.c * &g[0][1]) + &(&pt.d * &g[1][1]);
        self.normalize(&c, &d).expect("GL_2(A) preserves unimodularity")
    }
}

/// Complete duplicate-free enumeration of `P^1(A/n)` for a proper nonzero ideal.
pub fn proj_points(n: &IdealA) -> Result<Vec<ProjPoint>, ArithError> {
    Ok(P1Space::new(n)?.points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> &'static Field {
        Field::f2()
    }
    fn p(bits: u64) -> Poly {
        Poly::from_bits(f2(), bits)
    }
    fn ideal(bits: u64) -> IdealA {
        IdealA::new(&p(bits)).unwrap()
    }

    #[test]
    fn projective_line_counts() {
        assert_eq!(proj_points(&ideal(0b1011)).unwrap().len(), 9);
        let pts = proj_points(&ideal(0b10)).unwrap();
        let shown: Vec<String> = pts.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, vec!["(0:1)", "(1:0)", "(1:1)"]);
        assert_eq!(proj_points(&ideal(0b111)).unwrap().len(), 5);
    }

    #[test]
    fn unit_and_zero_ideals_rejected() {
        assert_eq!(IdealA::new(&Poly::zero(f2())), Err(ArithError::ZeroIdeal));
        assert!(matches!(proj_points(&IdealA::unit(f2())), Err(ArithError::UnitIdeal)));
        assert_eq!(P1Space::full_level(f2()).len(), 1);
    }

    /// Brute-force oracle: classes of unimodular pairs under unit scaling.
    fn oracle_count(n: &IdealA) -> usize {
        let field = n.field();
        let deg = n.degree();
        let all: Vec<Poly> = Poly::all_below_degree(field, deg).collect();
        let units: Vec<&Poly> = all.iter().filter(|u| n.coprime_to(u)).collect();
        let mut classes: BTreeSet<Vec<(Poly, Poly)>> = BTreeSet::new();
        for c in &all {
            for d in &all {
                if !c.gcd(d).gcd(n.generator()).is_one() {
                    continue;
                }
                let mut orbit: Vec<(Poly, Poly)> =
                    units.iter().map(|u| (n.reduce(&(c * *u)), n.reduce(&(d * *u)))).collect();
                orbit.sort();
                orbit.dedup();
                classes.insert(orbit);
            }
        }
        classes.len()
    }

    #[test]
    fn enumeration_matches_orbit_oracle() {
        for bits in [0b10u64, 0b11, 0b100, 0b101, 0b111, 0b1000, 0b1011, 0b1111, 0b10101, 0b11111] {
            let n = ideal(bits);
            assert_eq!(proj_points(&n).unwrap().len(), oracle_count(&n), "{n}");
        }
        let f3 = Field::get(3).unwrap();
        let n = IdealA::new(&Poly::from_coeffs(f3, vec![0, 0, 1])).unwrap();
        assert_eq!(proj_points(&n).unwrap().len(), oracle_count(&n));
    }

    #[test]
    fn normalization_is_idempotent_and_scaling_invariant() {
        for bits in [0b100u64, 0b101, 0b111, 0b1001, 0b10101, 0b10011] {
            let n = ideal(bits);
            let space = P1Space::new(&n).unwrap();
            let all: Vec<Poly> = Poly::all_below_degree(f2(), n.degree()).collect();
            for c in &all {
                for d in &all {
                    let Some(pt) = space.normalize(c, d) else { continue };
                    assert_eq!(space.normalize(&pt.c, &pt.d).as_ref(), Some(&pt));
                    for u in all.iter().filter(|u| n.coprime_to(u)) {
                        assert_eq!(space.normalize(&(c * u), &(d * u)).as_ref(), Some(&pt));
                    }
                    assert!(space.index_of(&pt).is_some());
                }
            }
        }
    }

    #[test]
    fn prime_counts_are_norm_plus_one() {
        for d in 2..=5 {
            for f in Poly::irreducibles_of_degree(f2(), d) {
                let n = IdealA::new(&f).unwrap();
                assert!(n.is_prime());
                assert_eq!(proj_points(&n).unwrap().len() as u64, n.norm() + 1);
            }
        }
    }

    #[test]
    fn residue_ring_units_invert() {
        let n = ideal(0b1011);
        for a in Poly::all_below_degree(f2(), 3).skip(1) {
            let x = ResidueElem::new(&n, &a);
            assert!(x.is_unit());
            assert!(x.mul(&x.inverse().unwrap()).rep().is_one());
        }
        let m = ideal(0b10101);
        let x = ResidueElem::new(&m, &p(0b111));
        assert!(!x.is_unit());
        assert!(x.inverse().is_none());
    }
}
