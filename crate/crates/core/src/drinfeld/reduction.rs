//! Reduction type at a finite prime and the Newton polygon of `phi(f)(x) / x`.

use num_rational::Ratio;
use serde::Serialize;

use super::module::DrinfeldModule;
use crate::arith::{Place, Poly};
use crate::error::DrinfeldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionType {
    Ordinary,
    Supersingular,
    BadOrNonIntegral,
}

fn check_prime(p: &Poly) -> Result<Poly, DrinfeldError> {
    if p.degree().unwrap_or(0) == 0 || !p.is_irreducible()? {
        return Err(crate::ArithError::NotPrime(p.to_string()).into());
    }
    Ok(p.monic())
}

fn good_at(phi: &DrinfeldModule, p: &Poly) -> Result<(), DrinfeldError> {
    for c in phi.phi_t().coeffs() {
        if c.reduce_mod(p).is_none() {
            return Err(DrinfeldError::NotIntegral(p.to_string()));
        }
    }
    if phi.delta().reduce_mod(p).is_some_and(|d| d.is_zero()) {
        return Err(DrinfeldError::BadReduction(p.to_string()));
    }
    Ok(())
}

/// Lowest `tau`-index `i >= 1` with nonzero coefficient of `phi(f)` modulo `p`.
pub fn reduced_height(phi: &DrinfeldModule, p: &Poly) -> Result<usize, DrinfeldError> {
    let p = check_prime(p)?;
    good_at(phi, &p)?;
    let image = phi.eval(&p);
    (1..image.coeffs().len())
        .find(|&i| !image.coeffs()[i].reduce_mod(&p).expect("integral").is_zero())
        .ok_or_else(|| DrinfeldError::Invariant("reduction of phi(f) is constant".into()))
}

pub fn reduction_type(phi: &DrinfeldModule, p: &Poly) -> Result<ReductionType, DrinfeldError> {
    let p = check_prime(p)?;
    if good_at(phi, &p).is_err() {
        return Ok(ReductionType::BadOrNonIntegral);
    }
    let d = p.degree().unwrap();
    let h = reduced_height(phi, &p)?;
    if h == d {
        Ok(ReductionType::Ordinary)
    } else if h == phi.rank() * d {
        Ok(ReductionType::Supersingular)
    } else {
        Err(DrinfeldError::Invariant(format!("reduction height {h} at {p} is neither {d} nor {}", phi.rank() * d)))
    }
}

/// Root valuations with multiplicities, in increasing order of valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub slopes: Vec<(Ratio<i64>, u64)>,
}

impl NewtonPolygon {
    pub fn total_multiplicity(&self) -> u64 {
        self.slopes.iter().map(|s| s.1).sum()
    }
    /// `sum slope * multiplicity`.
    pub fn weighted_sum(&self) -> Ratio<i64> {
        self.slopes.iter().map(|(s, m)| s * Ratio::from_integer(*m as i64)).sum()
    }
}

/// Lower convex hull of `(q^i - 1, v_p(a_i))` for the nonzero coefficients `a_i` of `phi(f)`;
/// a segment of slope `-s` and width `w` gives `w` roots of valuation `s`.
pub fn newton_polygon(phi: &DrinfeldModule, p: &Poly) -> Result<NewtonPolygon, DrinfeldError> {
    let p = check_prime(p)?;
    good_at(phi, &p)?;
    let q = phi.field().q() as i64;
    let place = Place::Finite(p.clone());
    let image = phi.eval(&p);
    let pts: Vec<(i64, i64)> = image
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Ok((q.pow(i as u32) - 1, c.valuation(&place)?)))
        .collect::<Result<_, DrinfeldError>>()?;
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above segment a -> pt
            if (b.1 - a.1) * (pt.0 - a.0) >= (pt.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes: Vec<(Ratio<i64>, u64)> =
        hull.windows(2).map(|w| (Ratio::new(w[0].1 - w[1].1, w[1].0 - w[0].0), (w[1].0 - w[0].0) as u64)).collect();
    slopes.reverse();
    Ok(NewtonPolygon { slopes })
}
