use btquot::arith::{parse_poly, Field, IdealA, Poly};
use btquot::harmonic::lattice::{coordinates_in, mat_vec, saturate, to_z};
use btquot::harmonic::{
    charpoly, eigenvalues_within_bound, eisenstein_index, formal_immersion_witness, good_primes, hecke_apply,
    hecke_coset_reps, hecke_matrix, in_hecke_set, is_harmonic, lambda_lattice, modular_symbol, symbol_zero_infinity,
    winding_image, Cochain, Cusp, H1Basis,
};
use btquot::quotient::{QuotientGraph, DEFAULT_EXTRA_DEPTH};
use btquot::tree::Mat2;
use btquot::{ArithError, GraphError, HeckeError};
use num_bigint::BigInt;
use proptest::prelude::*;

fn f2() -> &'static Field {
    Field::f2()
}

fn p(s: &str) -> Poly {
    parse_poly(f2(), s).unwrap()
}

fn graph(s: &str) -> QuotientGraph {
    QuotientGraph::build(&IdealA::new(&p(s)).unwrap(), DEFAULT_EXTRA_DEPTH).unwrap()
}

fn cusp(x: &str, y: &str) -> Cusp {
    (p(x), p(y))
}

fn act(g: &[[Poly; 2]; 2], c: &Cusp) -> Cusp {
    (&(&g[0][0] * &c.0) + &(&g[0][1] * &c.1), &(&g[1][0] * &c.0) + &(&g[1][1] * &c.1))
}

#[test]
fn cycle_basis_has_rank_betti() {
    for (s, rank) in [("T^3+T+1", 2), ("T^3+T^2+1", 2), ("T^4+T^3+1", 4), ("T^4+T^2+1", 2), ("T", 0)] {
        let g = graph(s);
        let b = H1Basis::new(&g).unwrap();
        assert_eq!(b.rank(), rank, "{s}");
        for i in 0..rank {
            let mut x = vec![0; rank];
            x[i] = 1;
            let c = b.combine(&g, &x);
            assert!(is_harmonic(&g, &c) && c.is_cuspidal(), "{s}");
            assert_eq!(b.coordinates(&g, &c).unwrap(), x, "{s}");
        }
    }
}

#[test]
fn a_single_edge_is_not_harmonic() {
    let g = graph("T^3+T+1");
    let mut c = Cochain::zero(&g);
    assert!(is_harmonic(&g, &c));
    c.finite[0] = 1;
    assert!(!is_harmonic(&g, &c));
}

#[test]
fn symbols_are_harmonic() {
    let g = graph("T^4+T^3+1");
    for (a, b) in [(("0", "1"), ("1", "T")), (("1", "0"), ("T+1", "T^2")), (("1", "T"), ("1", "T+1"))] {
        let c = modular_symbol(&g, &cusp(a.0, a.1), &cusp(b.0, b.1)).unwrap();
        assert!(is_harmonic(&g, &c));
    }
}

#[test]
fn symbol_invariance_under_a_fixed_element() {
    let g = graph("T^3+T+1");
    let gamma = [[p("T^2+1"), p("1")], [p("T^3+T+1"), p("T")]];
    assert!(in_hecke_set(&Mat2::from_polys(&gamma[0][0], &gamma[0][1], &gamma[1][0], &gamma[1][1]), &p("1"), g.modulus()));
    for (a, b) in [(cusp("0", "1"), cusp("1", "0")), (cusp("1", "T"), cusp("T+1", "T^2+T+1")), (cusp("0", "1"), cusp("1", "T+1"))] {
        let lhs = modular_symbol(&g, &act(&gamma, &a), &act(&gamma, &b)).unwrap();
        assert_eq!(lhs, modular_symbol(&g, &a, &b).unwrap());
    }
}

#[test]
fn symbol_relations() {
    let g = graph("T^3+T^2+1");
    let (a, b, c) = (cusp("0", "1"), cusp("1", "T^2"), cusp("1", "0"));
    let ab = modular_symbol(&g, &a, &b).unwrap();
    let ba = modular_symbol(&g, &b, &a).unwrap();
    assert_eq!(ab.add(&ba, &g), Cochain::zero(&g));
    let bc = modular_symbol(&g, &b, &c).unwrap();
    assert_eq!(ab.add(&bc, &g), modular_symbol(&g, &a, &c).unwrap());
    assert_eq!(modular_symbol(&g, &a, &c).unwrap(), symbol_zero_infinity(&g).unwrap());
    assert_eq!(modular_symbol(&g, &a, &a), Err(HeckeError::DegenerateSymbol));
    assert!(matches!(modular_symbol(&g, &cusp("T", "T"), &a), Err(HeckeError::Invariant(_))));
}

#[test]
fn coset_representatives() {
    let n = IdealA::new(&p("T^3+T+1")).unwrap();
    for r in ["T", "T+1", "T^2+T+1", "T^3+T^2+1"] {
        let r = p(r);
        let reps = hecke_coset_reps(&r);
        assert_eq!(reps.len(), (1 << r.degree().unwrap()) + 1);
        for h in &reps {
            assert!(in_hecke_set(h, &r, &n));
        }
        for (i, x) in reps.iter().enumerate() {
            for y in &reps[i + 1..] {
                assert!(!in_hecke_set(&(x * &y.inverse().unwrap()), &p("1"), &n), "{x:?} ~ {y:?}");
            }
        }
    }
}

#[test]
fn coset_representatives_cover_small_elements() {
    // every element of H(T, n) with small entries lies in exactly one coset
    let n = IdealA::new(&p("T^3+T+1")).unwrap();
    let r = p("T");
    let reps = hecke_coset_reps(&r);
    let entries: Vec<Poly> = Poly::all_below_degree(f2(), 4).collect();
    let mut seen = 0;
    for a in &entries {
        for b in &entries {
            for c in [Poly::zero(f2()), n.generator().clone()] {
                for d in &entries {
                    let h = Mat2::from_polys(a, b, &c, d);
                    if !in_hecke_set(&h, &r, &n) {
                        continue;
                    }
                    let hits =
                        reps.iter().filter(|x| in_hecke_set(&(&h * &x.inverse().unwrap()), &p("1"), &n)).count();
                    assert_eq!(hits, 1, "{h:?}");
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 20);
}

#[test]
fn hecke_set_membership() {
    let n = IdealA::new(&p("T^3+T+1")).unwrap();
    let h = Mat2::from_polys(&p("T"), &p("1"), &p("T^3+T+1"), &p("T^2+1"));
    // det = T^3 + T + T^3 + T + 1 = 1
    assert!(!in_hecke_set(&h, &p("T"), &n));
    assert!(in_hecke_set(&h, &p("1"), &n));
    let h = Mat2::from_polys(&p("T"), &p("0"), &p("T"), &p("1"));
    assert!(!in_hecke_set(&h, &p("T"), &n));
}

#[test]
fn hecke_on_zero_and_errors() {
    let g = graph("T^3+T+1");
    let z = Cochain::zero(&g);
    assert_eq!(hecke_apply(&g, &p("T"), &z).unwrap(), z);
    assert_eq!(hecke_apply(&g, &p("T^3+T+1"), &z), Err(HeckeError::PrimeDividesLevel("T^3+T+1".into())));
    assert!(matches!(
        hecke_apply(&g, &p("T^2"), &z),
        Err(HeckeError::Graph(GraphError::Arith(ArithError::NotPrime(_))))
    ));
}

#[test]
fn hecke_preserves_cusp_forms() {
    let g = graph("T^4+T^3+1");
    let b = H1Basis::new(&g).unwrap();
    for r in good_primes(&g, 2) {
        for i in 0..b.rank() {
            let mut x = vec![0; b.rank()];
            x[i] = 1;
            let t = hecke_apply(&g, &r, &b.combine(&g, &x)).unwrap();
            assert!(is_harmonic(&g, &t) && t.is_cuspidal());
        }
    }
}

#[test]
fn hecke_matrix_at_t() {
    let g = graph("T^3+T+1");
    let b = H1Basis::new(&g).unwrap();
    let m = hecke_matrix(&g, &b, &p("T")).unwrap();
    assert_eq!(m, vec![vec![-1, 2], vec![1, -1]]);
    // x^2 + 2x - 1, roots -1 +- sqrt 2
    assert_eq!(charpoly(&m), [-1, 2, 1].map(BigInt::from).to_vec());
    assert!(eigenvalues_within_bound(&m, 2, 1));
    assert!(!eigenvalues_within_bound(&[vec![3]], 2, 1));
}

#[test]
fn hecke_matrices_commute() {
    for s in ["T^4+T^3+1", "T^4+T^2+1"] {
        let g = graph(s);
        let b = H1Basis::new(&g).unwrap();
        let mats: Vec<_> = good_primes(&g, 2).iter().map(|r| hecke_matrix(&g, &b, r).unwrap()).collect();
        let mul = |a: &Vec<Vec<i64>>, c: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            a.iter().map(|row| (0..c.len()).map(|j| row.iter().zip(c).map(|(x, cr)| x * cr[j]).sum()).collect()).collect()
        };
        for x in &mats {
            for y in &mats {
                assert_eq!(mul(x, y), mul(y, x), "{s}");
            }
        }
    }
}

#[test]
fn winding_at_t_is_minus_the_symbol_at_one_over_t() {
    for s in ["T^3+T+1", "T^4+T^3+1"] {
        let g = graph(s);
        let w = winding_image(&g, &p("T")).unwrap();
        let x = modular_symbol(&g, &cusp("0", "1"), &cusp("1", "T")).unwrap();
        assert_eq!(w, x.scale(-1, &g), "{s}");
        assert!(w.is_cuspidal());
    }
}

fn big(rows: &[Vec<String>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn lambda_is_saturated_and_hecke_stable() {
    for (s, rank) in [("T^3+T+1", 2), ("T^4+T^3+1", 3), ("T^4+T^2+1", 2)] {
        let g = graph(s);
        let b = H1Basis::new(&g).unwrap();
        let primes = good_primes(&g, 2);
        let l = lambda_lattice(&g, &b, &primes).unwrap();
        assert_eq!(l.rank, rank, "{s}");
        assert!(l.stable, "{s}");
        let basis = big(&l.basis);
        assert_eq!(saturate(&basis), basis, "{s}");
        for r in &primes {
            let m = to_z(&hecke_matrix(&g, &b, r).unwrap());
            for v in &basis {
                assert!(coordinates_in(&basis, &mat_vec(&m, v)).is_some(), "{s}: T_{r}");
            }
        }
    }
    let g = graph("T^3+T+1");
    let b = H1Basis::new(&g).unwrap();
    assert_eq!(lambda_lattice(&g, &b, &[]), Err(HeckeError::EmptyPrimeList));
}

#[test]
fn eisenstein_index_is_stable() {
    let g = graph("T^3+T+1");
    let b = H1Basis::new(&g).unwrap();
    let r4 = eisenstein_index(&g, &b, 4).unwrap();
    let r5 = eisenstein_index(&g, &b, 5).unwrap();
    assert_eq!(r4.index.as_deref(), Some("7"));
    assert_eq!(r5.index, r4.index);
    assert_eq!(r4.algebra_rank, r5.algebra_rank);
    assert!(r4.cyclic && r4.stable);
    let g = graph("T");
    let b = H1Basis::new(&g).unwrap();
    assert_eq!(eisenstein_index(&g, &b, 3), Err(HeckeError::NoCuspForms));
}

#[test]
fn witness_around_u_minus_one() {
    for s in ["T^3+T+1", "T^3+T^2+1", "T^4+T^3+1"] {
        let w = formal_immersion_witness(&graph(s)).unwrap();
        let mut v = w.values.clone();
        v.sort();
        assert_eq!(v, vec![-1, 0, 1], "{s}");
        assert!(w.holds());
    }
    assert_eq!(formal_immersion_witness(&graph("T^2+T+1")), Err(HeckeError::WitnessPreconditions));
}

#[test]
fn symbol_at_one_over_t_is_nonzero_mod_two() {
    for s in ["T^3+T+1", "T^4+T^3+1", "T^5+T^2+1"] {
        let g = graph(s);
        let b = H1Basis::new(&g).unwrap();
        let x = modular_symbol(&g, &cusp("0", "1"), &cusp("1", "T")).unwrap();
        let c = b.coordinates(&g, &x).unwrap();
        assert!(c.iter().any(|v| v % 2 != 0), "{s}: {c:?}");
    }
}

#[test]
fn cochain_records_round_trip() {
    let g = graph("T^4+T^3+1");
    let x = modular_symbol(&g, &cusp("0", "1"), &cusp("1", "T^2+T+1")).unwrap();
    let rec = x.to_record(&g);
    let json = serde_json::to_string(&rec).unwrap();
    let back = Cochain::from_record(&g, &serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, x);
}

fn gamma0_word(n: &Poly, word: &[(bool, u64)]) -> [[Poly; 2]; 2] {
    let f = n.field();
    let mul = |x: &[[Poly; 2]; 2], y: &[[Poly; 2]; 2]| {
        let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    };
    let mut g = [[Poly::one(f), Poly::zero(f)], [Poly::zero(f), Poly::one(f)]];
    for &(upper, bits) in word {
        let x = Poly::from_bits(f, bits);
        let h = if upper {
            [[Poly::one(f), x], [Poly::zero(f), Poly::one(f)]]
        } else {
            [[Poly::one(f), Poly::zero(f)], [&x * n, Poly::one(f)]]
        };
        g = mul(&g, &h);
    }
    g
}

fn cusp_strategy() -> impl Strategy<Value = Cusp> {
    (0u64..32, 1u64..32).prop_filter_map("not coprime", |(x, y)| {
        let (x, y) = (Poly::from_bits(Field::f2(), x), Poly::from_bits(Field::f2(), y));
        x.gcd(&y).is_one().then_some((x, y))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symbols_are_gamma0_invariant(
        word in prop::collection::vec((any::<bool>(), 0u64..8), 1..4),
        a in cusp_strategy(),
        b in cusp_strategy(),
    ) {
        let g = graph("T^3+T+1");
        let same = (&a.0 * &b.1) == (&a.1 * &b.0);
        prop_assume!(!same);
        let gamma = gamma0_word(g.modulus().generator(), &word);
        let lhs = modular_symbol(&g, &act(&gamma, &a), &act(&gamma, &b)).unwrap();
        prop_assert_eq!(lhs, modular_symbol(&g, &a, &b).unwrap());
    }

    #[test]
    fn symbols_are_antisymmetric(a in cusp_strategy(), b in cusp_strategy()) {
        let g = graph("T^4+T^3+1");
        prop_assume!((&a.0 * &b.1) != (&a.1 * &b.0));
        let ab = modular_symbol(&g, &a, &b).unwrap();
        let ba = modular_symbol(&g, &b, &a).unwrap();
        prop_assert_eq!(ab.scale(-1, &g), ba);
        prop_assert!(is_harmonic(&g, &ab));
    }
}
