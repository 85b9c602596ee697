//! Torsion points of a Drinfeld module in `F`, preperiodicity, and the
//! structure `A/m + A/n` of the torsion module.

use std::collections::{HashMap, HashSet};

use super::module::DrinfeldModule;
use crate::arith::{Place, Poly, RatFn};
use crate::error::DrinfeldError;

pub const DEFAULT_DEG_BOUND: usize = 12;
pub const DEFAULT_DENOM_BOUND: usize = 3;
pub const DEFAULT_MAX_ITER: usize = 64;

/// The finite region `{ u / w : deg u <= max_deg }` that contains every torsion point.
#[derive(Clone, Debug)]
pub struct SearchRegion {
    pub w: Poly,
    /// `None` when the region is `{0}`.
    pub max_deg: Option<usize>,
}

impl SearchRegion {
    pub fn new(phi: &DrinfeldModule) -> Self {
        let f = phi.field();
        let mut w = Poly::one(f);
        let mut theta_inf = 0;
        for b in phi.escape_bounds() {
            match b.place {
                Place::Infinity => theta_inf = b.theta,
                Place::Finite(p) if b.theta < 0 => w = &w * &p.pow((-b.theta) as u64),
                Place::Finite(_) => {}
            }
        }
        let top = w.deg_i64() - theta_inf;
        SearchRegion { w, max_deg: (top >= 0).then_some(top as usize) }
    }

    pub fn contains(&self, x: &RatFn) -> bool {
        if x.is_zero() {
            return true;
        }
        let Some(top) = self.max_deg else { return false };
        let (q, r) = self.w.divrem(x.den()).expect("nonzero");
        r.is_zero() && (x.num() * &q).degree().unwrap() <= top
    }

    /// Every element, `u / w` with `deg u <= max_deg`.
    pub fn points(&self) -> Vec<RatFn> {
        let f = self.w.field();
        match self.max_deg {
            None => vec![RatFn::zero(f)],
            Some(top) => Poly::all_below_degree(f, top + 1)
                .map(|u| RatFn::new(u, self.w.clone()).expect("nonzero"))
                .collect(),
        }
    }

    pub fn log_size(&self) -> usize {
        self.max_deg.map_or(0, |d| d + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preperiodic {
    Yes,
    No,
    BudgetExceeded,
}

/// Whether the forward orbit of `x` under `phi(T)` is finite. Leaving the search
/// region is a certificate of escape.
pub fn is_preperiodic(phi: &DrinfeldModule, x: &RatFn, max_iter: usize) -> Preperiodic {
    let region = SearchRegion::new(phi);
    let pt = phi.phi_t();
    let mut seen = HashSet::new();
    let mut x = x.clone();
    for _ in 0..=max_iter {
        if !region.contains(&x) {
            return Preperiodic::No;
        }
        if !seen.insert(x.clone()) {
            return Preperiodic::Yes;
        }
        x = pt.eval(&x);
    }
    Preperiodic::BudgetExceeded
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionModule {
    /// Invariant factors with `m | n`; the module is `A/m + A/n`.
    pub m: Poly,
    pub n: Poly,
    /// A generator of the `A/n` summand, then one of `A/m` unless `m = 1`.
    pub generators: Vec<RatFn>,
    pub points: Vec<RatFn>,
}

impl TorsionModule {
    pub fn order_log(&self) -> usize {
        self.m.degree().unwrap() + self.n.degree().unwrap()
    }
}

fn sort_points(v: &mut [RatFn]) {
    v.sort_by(|a, b| (a.den(), a.num()).cmp(&(b.den(), b.num())));
}

/// All torsion points in `F`, by exhausting the search region. Errors with a
/// budget diagnostic if the region needs more than `deg_bound` numerator degrees
/// or a denominator exponent above `denom_bound`.
pub fn torsion_points(phi: &DrinfeldModule, deg_bound: usize, denom_bound: usize) -> Result<Vec<RatFn>, DrinfeldError> {
    let region = SearchRegion::new(phi);
    let deepest = region.w.factor().iter().map(|(_, e)| *e as usize).max().unwrap_or(0);
    if region.max_deg.is_some_and(|d| d > deg_bound) || deepest > denom_bound {
        return Err(DrinfeldError::BudgetExceeded(format!(
            "search region u/({}) with deg u <= {:?}",
            region.w, region.max_deg
        )));
    }
    let pt = phi.phi_t();
    let mut status: HashMap<RatFn, bool> = HashMap::new();
    let mut out = Vec::new();
    for x in region.points() {
        let mut path = Vec::new();
        let mut y = x.clone();
        let verdict = loop {
            if let Some(&s) = status.get(&y) {
                break s;
            }
            if !region.contains(&y) {
                break false;
            }
            if path.contains(&y) {
                break true;
            }
            path.push(y.clone());
            y = pt.eval(&y);
        };
        for p in path {
            status.insert(p, verdict);
        }
        if verdict {
            out.push(x);
        }
    }
    sort_points(&mut out);
    Ok(out)
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    (a * b).exact_div(&a.gcd(b)).monic()
}

struct Acting<'a> {
    phi: &'a DrinfeldModule,
}

impl Acting<'_> {
    fn apply(&self, a: &Poly, x: &RatFn) -> RatFn {
        self.phi.eval(a).eval(x)
    }

    /// Monic generator of the annihilator of `x`, searched up to degree `k`.
    fn annihilator(&self, x: &RatFn, k: usize) -> Option<Poly> {
        let f = self.phi.field();
        (0..=k).flat_map(|d| Poly::monics_of_degree(f, d)).find(|a| self.apply(a, x).is_zero())
    }

    fn span(&self, x: &RatFn, n: &Poly) -> HashSet<RatFn> {
        let f = self.phi.field();
        Poly::all_below_degree(f, n.degree().unwrap()).map(|a| self.apply(&a, x)).collect()
    }
}

/// The torsion module and its invariant factors.
pub fn torsion_module(phi: &DrinfeldModule, deg_bound: usize, denom_bound: usize) -> Result<TorsionModule, DrinfeldError> {
    let f = phi.field();
    let points = torsion_points(phi, deg_bound, denom_bound)?;
    let q = f.q() as usize;
    let mut k = 0;
    while q.pow(k as u32) < points.len() {
        k += 1;
    }
    if q.pow(k as u32) != points.len() {
        return Err(DrinfeldError::Invariant(format!("{} torsion points is not a power of q", points.len())));
    }
    let act = Acting { phi };
    let set: HashSet<RatFn> = points.iter().cloned().collect();
    for x in &points {
        for y in &points {
            if !set.contains(&(x + y)) {
                return Err(DrinfeldError::Invariant("torsion set is not closed under addition".into()));
            }
        }
        if !set.contains(&phi.phi_t().eval(x)) {
            return Err(DrinfeldError::Invariant("torsion set is not closed under phi(T)".into()));
        }
    }
    let mut anns = Vec::with_capacity(points.len());
    for x in &points {
        anns.push(act.annihilator(x, k).ok_or_else(|| DrinfeldError::Invariant(format!("no annihilator for {x}")))?);
    }
    let n = anns.iter().fold(Poly::one(f), |acc, a| lcm(&acc, a));
    let dm = k
        .checked_sub(n.degree().unwrap())
        .ok_or_else(|| DrinfeldError::Invariant("exponent exceeds module order".into()))?;
    let divisors: Vec<Poly> =
        (0..=n.degree().unwrap()).flat_map(|d| Poly::monics_of_degree(f, d)).filter(|d| d.divides(&n)).collect();
    let count = |d: &Poly| points.iter().filter(|x| act.apply(d, x).is_zero()).count();
    let counts: Vec<usize> = divisors.iter().map(count).collect();
    let m = divisors
        .iter()
        .filter(|m| m.degree() == Some(dm))
        .find(|m| {
            divisors.iter().zip(&counts).all(|(d, &c)| {
                c == q.pow((d.gcd(m).degree().unwrap() + d.degree().unwrap()) as u32)
            })
        })
        .cloned()
        .ok_or_else(|| DrinfeldError::Invariant("torsion module has more than two invariant factors".into()))?;

    let i = anns.iter().position(|a| *a == n).expect("exponent is attained");
    let x = points[i].clone();
    let mut generators = vec![x.clone()];
    if !m.is_one() {
        let ax = act.span(&x, &n);
        let y = points
            .iter()
            .zip(&anns)
            .filter(|(_, a)| **a == m)
            .map(|(y, _)| y)
            .find(|y| act.span(y, &m).iter().all(|z| z.is_zero() || !ax.contains(z)))
            .ok_or_else(|| DrinfeldError::Invariant("no complement for the second summand".into()))?;
        generators.push(y.clone());
    }
    Ok(TorsionModule { m, n, generators, points })
}
