use std::collections::HashSet;

use btquot::arith::{parse_poly, parse_ratfn, Field, Poly, RatFn};
use btquot::drinfeld::{
    is_preperiodic, newton_polygon, reduced_height, reduction_type, torsion_module, torsion_points, DrinfeldModule,
    Preperiodic, ReductionType, SearchRegion, SkewPoly, DEFAULT_DEG_BOUND, DEFAULT_DENOM_BOUND, DEFAULT_MAX_ITER,
};
use btquot::verify::small_modules;
use btquot::{ArithError, DrinfeldError};
use num_rational::Ratio;
use proptest::prelude::*;

fn f2() -> &'static Field {
    Field::f2()
}

fn p(s: &str) -> Poly {
    parse_poly(f2(), s).unwrap()
}

fn r(s: &str) -> RatFn {
    parse_ratfn(f2(), s).unwrap()
}

fn module(g: &str, delta: &str) -> DrinfeldModule {
    DrinfeldModule::new(r(g), r(delta)).unwrap()
}

fn skew(cs: &[&str]) -> SkewPoly {
    SkewPoly::new(f2(), cs.iter().map(|c| r(c)).collect())
}

#[test]
fn twisting_rule() {
    let tau = SkewPoly::tau(f2());
    let t = SkewPoly::scalar(r("T"));
    assert_eq!(&tau * &t, skew(&["0", "T^2"]));
    assert_eq!(&t * &tau, skew(&["0", "T"]));
    let f3 = Field::get(3).unwrap();
    let tau3 = SkewPoly::tau(f3);
    let x = SkewPoly::scalar(parse_ratfn(f3, "T+1").unwrap());
    assert_eq!((&tau3 * &x).coeff(1), parse_ratfn(f3, "T^3+1").unwrap());
    assert_eq!(skew(&["1", "T", "0", "0"]).degree(), Some(1));
    assert!(skew(&["0"]).is_zero());
}

#[test]
fn evaluation_is_additive_polynomial() {
    // T x + x^2 + T x^4 at x = 1/T
    let s = skew(&["T", "1", "T"]);
    assert_eq!(s.eval(&r("1/T")), r("1 + 1/T^2 + 1/T^3"));
    assert_eq!(s.to_string(), "T + tau + T*tau^2");
}

#[test]
fn phi_of_polynomials() {
    let phi = module("T", "1");
    assert_eq!(phi.phi_t(), skew(&["T", "T", "1"]));
    let a = p("T^2+T+1");
    let img = phi.eval(&a);
    assert_eq!(img.degree(), Some(4));
    assert_eq!(img.coeff(0), RatFn::from_poly(a));
    assert_eq!(img.coeff(4), r("1"));
    assert_eq!(phi.j_invariant().unwrap(), r("T^3"));
    assert_eq!(DrinfeldModule::new(r("T"), r("0")).unwrap_err(), DrinfeldError::ZeroDelta);
    assert!(DrinfeldModule::carlitz(f2()).j_invariant().is_err());
}

#[test]
fn potential_good_reduction_from_j() {
    let phi = module("1", "T");
    assert!(!phi.potential_good_reduction_at(&p("T")).unwrap());
    assert!(phi.potential_good_reduction_at(&p("T+1")).unwrap());
    assert!(module("0", "T").potential_good_reduction_at(&p("T")).unwrap());
    assert!(phi.potential_good_reduction_at(&p("T^2")).is_err());
}

#[test]
fn carlitz_torsion() {
    let c = DrinfeldModule::carlitz(f2());
    let t = torsion_module(&c, DEFAULT_DEG_BOUND, DEFAULT_DENOM_BOUND).unwrap();
    assert_eq!(t.points, ["0", "1", "T", "T+1"].map(r).to_vec());
    assert!(t.m.is_one());
    assert_eq!(t.n.degree(), Some(2));
    assert!(c.eval(&t.n).eval(&t.generators[0]).is_zero());
}

/// Brute force: small fractions killed by a small monic polynomial.
fn torsion_oracle(phi: &DrinfeldModule) -> HashSet<RatFn> {
    let f = f2();
    let killers: Vec<SkewPoly> = (1..=2).flat_map(|d| Poly::monics_of_degree(f, d)).map(|a| phi.eval(&a)).collect();
    let dens: Vec<Poly> = (0..=2).flat_map(|d| Poly::monics_of_degree(f, d)).collect();
    let mut out = HashSet::new();
    for u in Poly::all_below_degree(f, 4) {
        for v in &dens {
            let x = RatFn::new(u.clone(), v.clone()).unwrap();
            if killers.iter().any(|k| k.eval(&x).is_zero()) {
                out.insert(x);
            }
        }
    }
    out
}

#[test]
fn torsion_agrees_with_brute_force() {
    for phi in small_modules() {
        let t = torsion_module(&phi, DEFAULT_DEG_BOUND, DEFAULT_DENOM_BOUND).unwrap();
        let found: HashSet<RatFn> = t.points.iter().cloned().collect();
        for x in torsion_oracle(&phi) {
            assert!(found.contains(&x), "{phi}: missed {x}");
        }
        let kill = phi.eval(&t.n);
        for x in &t.points {
            assert!(kill.eval(x).is_zero(), "{phi}: {x} not killed by {}", t.n);
        }
        assert!(t.n.rem(&t.m).is_zero());
        assert_eq!(t.points.len(), 1 << t.order_log());
    }
}

#[test]
fn torsion_examples() {
    for (g, d) in [("0", "1"), ("1", "1"), ("T", "T"), ("T+1", "T^2")] {
        let phi = module(g, d);
        let pts = torsion_points(&phi, DEFAULT_DEG_BOUND, DEFAULT_DENOM_BOUND).unwrap();
        let region = SearchRegion::new(&phi);
        for x in &pts {
            assert!(region.contains(x));
            assert_eq!(is_preperiodic(&phi, x, DEFAULT_MAX_ITER), Preperiodic::Yes);
        }
        assert!(pts.contains(&RatFn::zero(f2())));
    }
    assert_eq!(is_preperiodic(&module("1", "1"), &r("T^5"), DEFAULT_MAX_ITER), Preperiodic::No);
}

#[test]
fn budget_is_enforced() {
    let phi = module("1", "T^4");
    let err = torsion_points(&phi, DEFAULT_DEG_BOUND, 1).unwrap_err();
    assert!(matches!(err, DrinfeldError::BudgetExceeded(_)), "{err:?}");
    let err = torsion_points(&module("T^3", "1"), 0, DEFAULT_DENOM_BOUND).unwrap_err();
    assert!(matches!(err, DrinfeldError::BudgetExceeded(_)), "{err:?}");
}

#[test]
fn reduction_examples() {
    let phi = module("0", "1");
    assert_eq!(reduction_type(&phi, &p("T")).unwrap(), ReductionType::Supersingular);
    assert_eq!(reduction_type(&phi, &p("T+1")).unwrap(), ReductionType::Supersingular);
    let phi = module("1", "1");
    assert_eq!(reduction_type(&phi, &p("T")).unwrap(), ReductionType::Ordinary);
    assert_eq!(reduced_height(&phi, &p("T")).unwrap(), 1);
    assert_eq!(reduction_type(&module("1", "T"), &p("T")).unwrap(), ReductionType::BadOrNonIntegral);
    assert_eq!(reduction_type(&module("1/T", "1"), &p("T")).unwrap(), ReductionType::BadOrNonIntegral);
    assert!(matches!(reduced_height(&module("1", "T"), &p("T")), Err(DrinfeldError::BadReduction(_))));
    assert!(matches!(reduction_type(&phi, &p("T^2+1")), Err(DrinfeldError::Arith(ArithError::NotPrime(_)))));
}

#[test]
fn newton_polygon_examples() {
    let one = Ratio::from_integer(1);
    let np = newton_polygon(&module("1", "1"), &p("T")).unwrap();
    assert_eq!(np.slopes, vec![(Ratio::from_integer(0), 2), (one, 1)]);
    let np = newton_polygon(&module("0", "1"), &p("T")).unwrap();
    assert_eq!(np.slopes, vec![(Ratio::new(1, 3), 3)]);
    for phi in small_modules() {
        for f in Poly::irreducibles_of_degree(f2(), 2) {
            if reduction_type(&phi, &f).unwrap() == ReductionType::BadOrNonIntegral {
                continue;
            }
            let np = newton_polygon(&phi, &f).unwrap();
            assert_eq!(np.total_multiplicity(), 15, "{phi} at {f}");
            // the nonzero roots multiply to f up to a unit
            assert_eq!(np.weighted_sum(), one, "{phi} at {f}");
            let slopes: Vec<_> = np.slopes.iter().map(|s| s.0).collect();
            assert!(slopes.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

fn ratfn_strategy() -> impl Strategy<Value = RatFn> {
    (0u64..16, 1u64..8).prop_map(|(n, d)| RatFn::new(Poly::from_bits(Field::f2(), n), Poly::from_bits(Field::f2(), d)).unwrap())
}

fn skew_strategy() -> impl Strategy<Value = SkewPoly> {
    prop::collection::vec(ratfn_strategy(), 0..4).prop_map(|c| SkewPoly::new(Field::f2(), c))
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    (0u64..32).prop_map(|b| Poly::from_bits(Field::f2(), b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn skew_ring_axioms(a in skew_strategy(), b in skew_strategy(), c in skew_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn multiplication_is_composition(a in skew_strategy(), b in skew_strategy(), x in ratfn_strategy()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn phi_is_a_ring_homomorphism(a in poly_strategy(), b in poly_strategy(), g in 0u64..8, d in 1u64..8) {
        let phi = DrinfeldModule::new(RatFn::from_poly(Poly::from_bits(f2(), g)), RatFn::from_poly(Poly::from_bits(f2(), d))).unwrap();
        prop_assert_eq!(phi.eval(&(&a * &b)), &phi.eval(&a) * &phi.eval(&b));
        prop_assert_eq!(phi.eval(&(&a + &b)), &phi.eval(&a) + &phi.eval(&b));
        if let Some(k) = a.degree() {
            prop_assert_eq!(phi.eval(&a).degree(), Some(2 * k));
        }
    }

    #[test]
    fn torsion_is_a_submodule(pick in 0usize..56) {
        let phi = &small_modules()[pick];
        let pts = torsion_points(phi, DEFAULT_DEG_BOUND, DEFAULT_DENOM_BOUND).unwrap();
        let set: HashSet<&RatFn> = pts.iter().collect();
        let pt = phi.phi_t();
        for x in &pts {
            prop_assert!(set.contains(&pt.eval(x)));
            for y in &pts {
                prop_assert!(set.contains(&(x + y)));
            }
        }
    }
}
