//! Characteristic polynomials and a Sturm-sequence check that every eigenvalue
//! lies in `[-2 q^{d/2}, 2 q^{d/2}]`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients from the constant term up.
pub type QPoly = Vec<BigRational>;

/// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier, constant term first.
pub fn charpoly(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = super::lattice::mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n + 1 - k];
        }
        let am = super::lattice::mat_mul(&a, &next);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (quo, rem) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero());
        c[n - k] = quo;
        mk = next;
    }
    c
}

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &QPoly) -> QPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
}

fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let k = r.last().unwrap() / lb;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &k * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn quo(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor");
    let mut q = vec![BigRational::zero(); (a.len() + 1).saturating_sub(b.len())];
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.last().unwrap() / lb;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &k * c;
        }
        q[shift] = k;
        r.pop();
    }
    trim(q)
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// `p / gcd(p, p')`.
pub fn squarefree_part(p: &[BigInt]) -> QPoly {
    let p: QPoly = trim(p.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let g = gcd(&p, &derivative(&p));
    quo(&p, &g)
}

/// A real number `s * sqrt(m)` with `s` rational and `m` a positive integer.
#[derive(Clone, Debug)]
pub struct Surd {
    pub s: BigRational,
    pub m: BigInt,
}

/// Sign of `p(s sqrt m)`, computed exactly.
fn sign_at(p: &QPoly, x: &Surd) -> Ordering {
    let m = BigRational::from_integer(x.m.clone());
    // p(x) = e + o sqrt(m)
    let (mut e, mut o) = (BigRational::zero(), BigRational::zero());
    let mut pow = BigRational::one(); // s^k m^{floor(k/2)}
    for (k, c) in p.iter().enumerate() {
        if k % 2 == 0 {
            e += c * &pow;
        } else {
            o += c * &pow;
        }
        pow = if k % 2 == 0 { &pow * &x.s } else { &pow * &x.s * &m };
    }
    let se = e.cmp(&BigRational::zero());
    let so = o.cmp(&BigRational::zero());
    if so == Ordering::Equal || se == so {
        return if se == Ordering::Equal { so } else { se };
    }
    if se == Ordering::Equal {
        return so;
    }
    match (&e * &e).cmp(&(&o * &o * &m)) {
        Ordering::Greater => se,
        Ordering::Less => so,
        Ordering::Equal => Ordering::Equal,
    }
}

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), derivative(p)];
    while chain.last().is_some_and(|q| !q.is_empty()) {
        let n = chain.len();
        let r: QPoly = rem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        chain.push(r);
    }
    chain.pop();
    chain
}

fn sign_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let s: Vec<Ordering> = signs.filter(|s| *s != Ordering::Equal).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_at_infinity(p: &QPoly, negative: bool) -> Ordering {
    let lead = p.last().map_or(Ordering::Equal, |c| c.cmp(&BigRational::zero()));
    if negative && p.len().is_multiple_of(2) {
        lead.reverse()
    } else {
        lead
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCount {
    /// Number of distinct complex roots.
    pub distinct: usize,
    pub real: usize,
    /// Distinct real roots in `[-x, x]`.
    pub in_interval: usize,
}

impl RootCount {
    pub fn all_real_and_bounded(&self) -> bool {
        self.real == self.distinct && self.in_interval == self.distinct
    }
}

/// Counts roots of `p` against the symmetric interval `[-x, x]`.
pub fn count_roots(p: &[BigInt], x: &Surd) -> RootCount {
    let sf = squarefree_part(p);
    let chain = sturm_chain(&sf);
    let neg = Surd { s: -x.s.clone(), m: x.m.clone() };
    let v = |pt: &Surd| sign_changes(chain.iter().map(|q| sign_at(q, pt)));
    let v_inf = |negative: bool| sign_changes(chain.iter().map(|q| sign_at_infinity(q, negative)));
    let real = v_inf(true) - v_inf(false);
    let in_interval = v(&neg) - v(x) + usize::from(sign_at(&sf, &neg) == Ordering::Equal);
    RootCount { distinct: sf.len().saturating_sub(1), real, in_interval }
}

/// The bound `2 q^{d/2}` as a surd.
pub fn ramanujan_bound(q: u64, d: usize) -> Surd {
    let half = BigInt::from(q).pow((d / 2) as u32);
    let s = BigRational::from_integer(BigInt::from(2) * half);
    let m = if d.is_multiple_of(2) { BigInt::one() } else { BigInt::from(q) };
    Surd { s, m }
}

/// Whether every eigenvalue of `m` is real with absolute value at most `2 q^{d/2}`.
pub fn eigenvalues_within_bound(m: &[Vec<i64>], q: u64, d: usize) -> bool {
    m.is_empty() || count_roots(&charpoly(m), &ramanujan_bound(q, d)).all_real_and_bounded()
}
