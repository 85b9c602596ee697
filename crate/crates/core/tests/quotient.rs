use std::collections::{BTreeSet, HashSet};

use btquot::arith::{parse_poly, Field, IdealA, P1Space, Poly};
use btquot::quotient::export::{to_json, GraphRecord};
use btquot::quotient::groups::{edge_group_generators, edge_group_order, PolyMat};
use btquot::quotient::{
    coset_point, gl2a_reduce, orbit_partition, vertex_group_generators, vertex_group_order, EdgeSlot, QuotientGraph, VertexLoc,
    VertexTag, DEFAULT_EXTRA_DEPTH,
};
use btquot::tree::{EdgeNF, LaurentPi, Mat2, VertexNF};
use btquot::GraphError;
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

fn poly_mul(x: &PolyMat, y: &PolyMat) -> PolyMat {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Brute-force closure of a finite matrix group under multiplication.
fn closure(gens: &[PolyMat]) -> Vec<PolyMat> {
    let f = gens[0][0][0].field();
    let id = [[Poly::one(f), Poly::zero(f)], [Poly::zero(f), Poly::one(f)]];
    let mut seen: HashSet<PolyMat> = HashSet::from([id.clone()]);
    let mut todo = vec![id];
    while let Some(x) = todo.pop() {
        for g in gens {
            let y = poly_mul(&x, g);
            if seen.insert(y.clone()) {
                todo.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn orbit_sets(space: &P1Space, group: &[PolyMat]) -> BTreeSet<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for pt in space.points() {
        out.insert(group.iter().map(|g| space.index_of(&space.act(pt, g)).unwrap()).collect());
    }
    out
}

#[test]
fn group_orders_match_closures() {
    for q in [2u32, 3] {
        let f = Field::get(q).unwrap();
        for level in 0..=3 {
            let g = closure(&vertex_group_generators(f, level));
            assert_eq!(g.len() as u64, vertex_group_order(q as u64, level), "q = {q}, level {level}");
            let h = closure(&edge_group_generators(f, level));
            assert_eq!(h.len() as u64, edge_group_order(q as u64, level), "q = {q}, level {level}");
        }
    }
}

#[test]
fn orbit_partitions_match_brute_force() {
    for s in ["T^3+T+1", "T^4+T^2+1", "T^2+T", "T^3"] {
        let space = P1Space::new(&IdealA::new(&p(s)).unwrap()).unwrap();
        for level in 0..=3 {
            let gens = vertex_group_generators(f2(), level);
            let part = orbit_partition(&space, &gens);
            let got: BTreeSet<BTreeSet<usize>> = part.orbits.iter().map(|o| o.iter().copied().collect()).collect();
            assert_eq!(got, orbit_sets(&space, &closure(&gens)), "{s} level {level}");
        }
    }
}

#[test]
fn stabilizers_times_orbits_give_group_order() {
    for s in ["T^3+T+1", "T^4+T^3+1", "T^4+T^2+1", "T^2+T"] {
        let g = graph(s);
        for v in g.vertices() {
            assert_eq!(v.stab_order * v.orbit_size as u64, vertex_group_order(2, v.level), "{s} vertex {}", v.id);
        }
        for e in g.edges() {
            assert_eq!(e.stab_order * e.orbit_size as u64, edge_group_order(2, e.level), "{s} edge {}", e.id);
        }
    }
}

#[test]
fn small_examples() {
    let g = graph("T^3+T+1");
    assert_eq!(g.betti(), 2);
    assert_eq!(g.half_lines().len(), 2);
    assert_eq!(g.stable_level(), 2);
    assert_eq!(g.vertices().iter().filter(|v| v.level == 0).map(|v| v.orbit_size).sum::<usize>(), 9);
    let g = graph("T");
    assert_eq!(g.betti(), 0);
    assert_eq!(g.half_lines().len(), 2);
    let g = graph("T^4+T^2+1");
    assert_eq!(g.betti(), 2);
    // a prime level has exactly the two cusps 0 and infinity
    for s in ["T^3+T^2+1", "T^4+T^3+1", "T^5+T^2+1"] {
        assert_eq!(graph(s).half_lines().len(), 2, "{s}");
    }
}

#[test]
fn degrees_add_up() {
    for s in ["T^3+T+1", "T^4+T^2+1", "T^4+T^3+1", "T^3"] {
        let g = graph(s);
        let total: usize = g.vertices().iter().map(|v| g.outgoing(v.id).len()).sum();
        assert_eq!(total, 2 * g.edges().len(), "{s}");
        let finite_v = g.finite_vertices().len();
        let finite_e = g.finite_edges().len();
        assert_eq!(finite_e + 1, finite_v + g.betti(), "{s}");
    }
}

#[test]
fn unit_ideal_needs_the_full_level_constructor() {
    assert!(QuotientGraph::build(&IdealA::unit(f2()), 1).is_err());
}

#[test]
fn atkin_lehner_is_an_involution() {
    for s in ["T^3+T+1", "T^4+T^3+1", "T^4+T+1"] {
        let g = graph(s);
        for v in g.vertices().iter().filter(|v| v.level + 1 < g.max_level()) {
            if let VertexLoc::Stored(w) = g.atkin_lehner_vertex(v.id).unwrap() {
                if g.vertices()[w].level + 1 < g.max_level() {
                    assert_eq!(g.atkin_lehner_vertex(w).unwrap(), VertexLoc::Stored(v.id), "{s}");
                }
            }
        }
        let v0 = g.tagged(VertexTag::V(0)).unwrap();
        let u0 = g.tagged(VertexTag::U(0)).unwrap();
        assert_eq!(g.atkin_lehner_vertex(v0).unwrap(), VertexLoc::Stored(u0), "{s}");
        for &e in g.finite_edges() {
            let (slot, _) = g.edge_slot(e);
            let c = g.atkin_lehner_edge(slot).unwrap();
            let back = g.atkin_lehner_edge(c.slot).unwrap();
            assert_eq!(back.slot, slot, "{s}");
            assert_eq!(back.sign * c.sign, 1, "{s}");
        }
    }
    let g = graph("T^4+T+1");
    let w = g.tagged(VertexTag::W).unwrap();
    assert_eq!(g.atkin_lehner_vertex(w).unwrap(), VertexLoc::Stored(w));
    assert!(matches!(graph("T^4+T^2+1").atkin_lehner_vertex(0), Err(GraphError::CompositeLevel(_))));
    assert!(matches!(graph("T^2+T").atkin_lehner_vertex(0), Err(GraphError::CompositeLevel(_))));
}

fn u_vertex(g: &QuotientGraph, m: i64) -> VertexNF {
    VertexNF::v(m + g.modulus().degree() as i64).apply(&Mat2::swap(g.field())).unwrap()
}

#[test]
fn edge_e0_joins_u_minus_one_to_u_zero() {
    for s in ["T^3+T+1", "T^3+T^2+1", "T^4+T^3+1", "T^5+T^2+1"] {
        let g = graph(s);
        let (a, b) = (u_vertex(&g, -1), u_vertex(&g, 0));
        assert!(a.is_adjacent(&b));
        let um1 = g.tagged(VertexTag::U(-1)).unwrap();
        let u0 = g.tagged(VertexTag::U(0)).unwrap();
        assert_eq!(g.classify_vertex(&a), VertexLoc::Stored(um1), "{s}");
        assert_eq!(g.classify_vertex(&b), VertexLoc::Stored(u0), "{s}");
        let c = g.classify_tree_edge(&EdgeNF::new(a, b));
        let (e, orient) = g.slot_edge(c.slot).unwrap();
        let edge = &g.edges()[e];
        let (o, t) = if c.sign * orient > 0 { (edge.origin, edge.terminus) } else { (edge.terminus, edge.origin) };
        assert_eq!((o, t), (um1, u0), "{s}");
    }
}

#[test]
fn reduction_of_a_small_vertex() {
    let v = VertexNF { k: 1, u: LaurentPi::from_terms(f2(), vec![(-1, 1)]) };
    let (level, gamma) = gl2a_reduce(&v, f2());
    assert!(gamma.in_gl2a());
    assert_eq!(VertexNF::v(level as i64).apply(&gamma).unwrap(), v);
    assert_eq!(level, 1);
    let g = graph("T^3+T+1");
    let VertexLoc::Stored(id) = g.classify_vertex(&v) else { panic!("far vertex") };
    assert_eq!(g.vertices()[id].level, 1);
    // the label of gamma lies in the G_1-orbit of (1 : T)
    let space = g.space();
    let part = orbit_partition(space, &vertex_group_generators(f2(), 1));
    let label = space.index_of(&coset_point(space, &gamma)).unwrap();
    let want = space.index_of(&space.normalize(&p("1"), &p("T")).unwrap()).unwrap();
    assert_eq!(part.orbit_of[label], part.orbit_of[want]);
}

#[test]
fn half_line_junctions() {
    for s in ["T^3+T+1", "T^3+T^2+1", "T^4+T^3+1", "T^5+T^2+1"] {
        let g = graph(s);
        let um1 = g.tagged(VertexTag::U(-1)).unwrap();
        let junctions: Vec<usize> = g.half_lines().iter().map(|h| h.junction).collect();
        assert!(junctions.contains(&um1), "{s}: junctions {junctions:?}");
        for h in g.half_lines() {
            for &v in &h.vertices[1..] {
                assert_eq!(g.degree(v), 2, "{s}");
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let g = graph("T^4+T^2+1");
    let json = to_json(&g);
    let rec: GraphRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(rec, GraphRecord::from_graph(&g));
    assert_eq!(rec.betti, 2);
    // (T^2+T+1)^2 has cusps 0, infinity and three of denominator T^2+T+1
    assert_eq!(rec.half_lines.len(), 5);
    assert_eq!(to_json(&graph("T^4+T^2+1")), json);
}

#[test]
fn full_level_is_a_half_line() {
    let g = QuotientGraph::full_level(f2(), 6).unwrap();
    assert_eq!(g.betti(), 0);
    for v in g.vertices() {
        assert_eq!(v.level, v.id);
        assert_eq!(g.degree(v.id), if v.level == 0 { 1 } else { 2 });
    }
}

fn gamma0_strategy() -> impl Strategy<Value = Vec<(bool, u64)>> {
    prop::collection::vec((any::<bool>(), 0u64..16), 1..5)
}

fn gamma0_element(n: &Poly, word: &[(bool, u64)]) -> Mat2 {
    let f = n.field();
    let (zero, one) = (Poly::zero(f), Poly::one(f));
    let mut g = Mat2::identity(f);
    for &(upper, bits) in word {
        let x = Poly::from_bits(f, bits);
        let h = if upper {
            Mat2::from_polys(&one, &x, &zero, &one)
        } else {
            Mat2::from_polys(&one, &zero, &(&x * n), &one)
        };
        g = &g * &h;
    }
    g
}

fn walk(steps: &[u8]) -> VertexNF {
    let mut v = VertexNF::v(0);
    for &s in steps {
        let nb = v.neighbors(f2());
        v = nb[s as usize % nb.len()].clone();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_gamma0_invariant(word in gamma0_strategy(), steps in prop::collection::vec(0u8..3, 1..7)) {
        let g = graph("T^3+T+1");
        let v = walk(&steps);
        let e = EdgeNF::new(v.parent(), v);
        let delta = gamma0_element(g.modulus().generator(), &word);
        let c = g.classify_tree_edge(&e);
        prop_assert_eq!(g.classify_tree_edge(&e.apply(&delta).unwrap()), c);
        let r = g.classify_tree_edge(&e.reverse());
        prop_assert_eq!(r.slot, c.slot);
        prop_assert_eq!(r.sign, -c.sign);
    }

    #[test]
    fn lifted_slots_classify_back(pick in 0usize..64) {
        let g = graph("T^4+T^3+1");
        let slots: Vec<EdgeSlot> = (0..g.finite_edges().len()).map(EdgeSlot::Finite)
            .chain((0..g.half_lines().len()).flat_map(|c| (0..6).map(move |pos| EdgeSlot::Tail { cusp: c, pos })))
            .collect();
        let slot = slots[pick % slots.len()];
        let c = g.classify_tree_edge(&g.lift_slot(slot));
        prop_assert_eq!(c.slot, slot);
        prop_assert_eq!(c.sign, 1);
    }
}
