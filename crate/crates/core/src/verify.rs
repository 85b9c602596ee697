//! Executable checks of the combinatorial and arithmetic facts the library is
//! built around, for `q = 2` and levels of degree at most 5.

use std::collections::BTreeSet;

use crate::arith::{parse_poly, proj_points, Field, IdealA, Poly, RatFn};
use crate::drinfeld::{
    is_preperiodic, newton_polygon, reduced_height, reduction_type, torsion_module, torsion_points, DrinfeldModule,
    Preperiodic, ReductionType, SearchRegion, DEFAULT_DEG_BOUND, DEFAULT_DENOM_BOUND, DEFAULT_MAX_ITER,
};
use crate::harmonic::{
    eigenvalues_within_bound, eisenstein_index, formal_immersion_witness, good_primes, hecke_apply, hecke_matrix,
    modular_symbol, symbol_zero_infinity, winding_image, Cochain, H1Basis,
};
use crate::quotient::{QuotientGraph, VertexLoc, VertexTag, DEFAULT_EXTRA_DEPTH};

pub const PRIME_LEVELS: [&str; 4] = ["T^3+T+1", "T^3+T^2+1", "T^4+T^3+1", "T^5+T^2+1"];

/// Eisenstein index at `T^3+T+1` with degree bound 4, recorded from the first run.
pub const EISENSTEIN_INDEX_T3_T_1: u64 = 7;

pub type CheckResult = Result<String, String>;

pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub run: fn() -> CheckResult,
}

pub fn acceptance_suite() -> Vec<Check> {
    vec![
        Check { id: 1, name: "quotient graph structure at prime level", run: graph_structure },
        Check { id: 2, name: "Betti numbers", run: betti_numbers },
        Check { id: 3, name: "coset counts", run: coset_counts },
        Check { id: 4, name: "winding identity for [0, a/r]", run: winding_identity },
        Check { id: 5, name: "winding nonvanishing", run: winding_nonvanishing },
        Check { id: 6, name: "formal immersion witness", run: witness },
        Check { id: 7, name: "Hecke commutativity and eigenvalue bound", run: hecke_sanity },
        Check { id: 8, name: "Eisenstein quotient", run: eisenstein },
        Check { id: 9, name: "torsion of Drinfeld modules", run: torsion },
        Check { id: 10, name: "reduction types and Newton polygons", run: reduction },
        Check { id: 11, name: "GL_2(A) quotient is a half-line", run: full_level },
    ]
}

fn f2() -> &'static Field {
    Field::f2()
}

fn poly(s: &str) -> Poly {
    parse_poly(f2(), s).expect("literal")
}

fn graph(s: &str) -> Result<QuotientGraph, String> {
    let n = IdealA::new(&poly(s)).map_err(|e| e.to_string())?;
    QuotientGraph::build(&n, DEFAULT_EXTRA_DEPTH).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph_structure() -> CheckResult {
    for s in PRIME_LEVELS {
        let g = graph(s)?;
        ensure(g.half_lines().len() == 2, || format!("{s}: {} half-lines", g.half_lines().len()))?;
        for v in g.vertices() {
            let series = v.tags.iter().any(|t| matches!(t, VertexTag::V(_)) || matches!(t, VertexTag::U(m) if *m >= 0));
            ensure(!series || g.degree(v.id) == 2, || format!("{s}: vertex {} {:?} has degree {}", v.id, v.tags, g.degree(v.id)))?;
        }
        let special: Vec<usize> =
            g.vertices().iter().filter(|v| !v.is_cuspidal && v.stab_order > g.z_order()).map(|v| v.id).collect();
        let ones: Vec<usize> = g.vertices().iter().filter(|v| g.degree(v.id) == 1).map(|v| v.id).collect();
        if g.modulus().degree() % 2 == 0 {
            ensure(special.len() == 1 && ones == special, || format!("{s}: special {special:?}, degree one {ones:?}"))?;
            let w = special[0];
            ensure(g.vertices()[w].tags.contains(&VertexTag::W), || format!("{s}: vertex {w} is not tagged w"))?;
            let al = g.atkin_lehner_vertex(w).map_err(|e| e.to_string())?;
            ensure(al == VertexLoc::Stored(w), || format!("{s}: w maps to {al:?}"))?;
            let (e, _) = g.outgoing(w)[0];
            let nb = if g.edges()[e].origin == w { g.edges()[e].terminus } else { g.edges()[e].origin };
            ensure(g.vertices()[nb].stab_order == g.z_order(), || format!("{s}: neighbour of w has nontrivial stabilizer"))?;
        } else {
            ensure(special.is_empty() && ones.is_empty(), || format!("{s}: special {special:?}, degree one {ones:?}"))?;
        }
        for &e in g.finite_edges() {
            ensure(g.edges()[e].stab_order == g.z_order(), || format!("{s}: finite edge {e} has nontrivial stabilizer"))?;
        }
    }
    Ok(format!("{} levels: two half-lines, series degrees 2, w and stabilizers as expected", PRIME_LEVELS.len()))
}

fn betti_numbers() -> CheckResult {
    let mut seen = Vec::new();
    for (s, want) in [("T^4+T^2+1", 2), ("T^3+T+1", 2), ("T", 0)] {
        let b = graph(s)?.betti();
        ensure(b == want, || format!("{s}: Betti number {b}, expected {want}"))?;
        seen.push(format!("{s}:{b}"));
    }
    Ok(seen.join(" "))
}

fn coset_counts() -> CheckResult {
    let mut n = 0;
    for d in 2..=5 {
        for p in Poly::irreducibles_of_degree(f2(), d) {
            let pts = proj_points(&IdealA::new(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let distinct: BTreeSet<_> = pts.iter().collect();
            ensure(pts.len() == (1 << d) + 1 && distinct.len() == pts.len(), || format!("{p}: {} points", pts.len()))?;
            n += 1;
        }
    }
    Ok(format!("{n} primes of degree 2..5"))
}

fn winding_identity() -> CheckResult {
    let f = f2();
    for s in ["T^3+T+1", "T^3+T^2+1", "T^4+T^3+1"] {
        let g = graph(s)?;
        let e = symbol_zero_infinity(&g).map_err(|e| e.to_string())?;
        for r in ["T", "T+1", "T^2+T+1"] {
            let r = poly(r);
            let d = r.degree().unwrap();
            let te = hecke_apply(&g, &r, &e).map_err(|e| e.to_string())?;
            let lhs = e.scale(1 + (1 << d), &g).sub(&te, &g);
            let mut rhs = Cochain::zero(&g);
            for a in Poly::all_below_degree(f, d).filter(|a| !a.is_zero()) {
                let x = modular_symbol(&g, &(Poly::zero(f), Poly::one(f)), &(a, r.clone())).map_err(|e| e.to_string())?;
                rhs = rhs.add(&x, &g);
            }
            ensure(lhs == rhs, || format!("{s}, r = {r}: identity fails"))?;
        }
    }
    Ok("9 pairs".into())
}

fn winding_nonvanishing() -> CheckResult {
    let mut out = Vec::new();
    for s in PRIME_LEVELS {
        let g = graph(s)?;
        let mut hit = None;
        for r in good_primes(&g, 2) {
            if !winding_image(&g, &r).map_err(|e| e.to_string())?.is_zero() {
                hit = Some(r);
                break;
            }
        }
        let r = hit.ok_or_else(|| format!("{s}: every winding image of degree <= 2 vanishes"))?;
        out.push(format!("{s}@{r}"));
    }
    Ok(out.join(" "))
}

fn witness() -> CheckResult {
    let mut stabs = Vec::new();
    for s in PRIME_LEVELS {
        let g = graph(s)?;
        let w = formal_immersion_witness(&g).map_err(|e| e.to_string())?;
        ensure(w.holds(), || format!("{s}: values {:?} around u_-1", w.values))?;
        // recorded only
        let u = g.tagged(VertexTag::U(-1)).ok_or_else(|| format!("{s}: no u_-1"))?;
        stabs.push(g.vertices()[u].stab_order / g.z_order());
    }
    Ok(format!("{} levels; |stab(u_-1)| / z = {stabs:?}", PRIME_LEVELS.len()))
}

fn hecke_sanity() -> CheckResult {
    let mut count = 0;
    for s in PRIME_LEVELS {
        let g = graph(s)?;
        let basis = H1Basis::new(&g).map_err(|e| e.to_string())?;
        let primes = good_primes(&g, 3);
        let mut mats = Vec::new();
        for r in &primes {
            let m = hecke_matrix(&g, &basis, r).map_err(|e| e.to_string())?;
            ensure(eigenvalues_within_bound(&m, 2, r.degree().unwrap()), || format!("{s}: T_{r} breaks the bound"))?;
            mats.push(m);
        }
        for (i, a) in mats.iter().enumerate() {
            for b in &mats[i + 1..] {
                ensure(mul(a, b) == mul(b, a), || format!("{s}: Hecke matrices do not commute"))?;
            }
        }
        count += mats.len();
    }
    Ok(format!("{count} matrices"))
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().map(|r| (0..b.len()).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}

fn eisenstein() -> CheckResult {
    let g = graph("T^3+T+1")?;
    let basis = H1Basis::new(&g).map_err(|e| e.to_string())?;
    let r = eisenstein_index(&g, &basis, 4).map_err(|e| e.to_string())?;
    ensure(r.cyclic, || "quotient is not cyclic".into())?;
    ensure(r.stable, || "changes when the degree bound grows".into())?;
    let want = EISENSTEIN_INDEX_T3_T_1.to_string();
    ensure(r.index.as_deref() == Some(want.as_str()), || format!("index {:?}, recorded {want}", r.index))?;
    Ok(format!("index {want}, cyclic, stable"))
}

/// Rank-2 modules with `g, delta` of degree at most 2 over `F_2`, `delta != 0`.
pub fn small_modules() -> Vec<DrinfeldModule> {
    let f = f2();
    let mut out = Vec::new();
    for g in 0..8 {
        for d in 1..8 {
            let g = RatFn::from_poly(Poly::from_bits(f, g));
            let d = RatFn::from_poly(Poly::from_bits(f, d));
            out.push(DrinfeldModule::new(g, d).expect("nonzero delta"));
        }
    }
    out
}

fn torsion() -> CheckResult {
    let f = f2();
    let c = torsion_points(&DrinfeldModule::carlitz(f), DEFAULT_DEG_BOUND, DEFAULT_DENOM_BOUND).map_err(|e| e.to_string())?;
    let want: Vec<RatFn> = ["0", "1", "T", "T+1"].iter().map(|s| RatFn::from_poly(poly(s))).collect();
    ensure(c == want, || format!("Carlitz torsion {c:?}"))?;
    let modules = small_modules();
    for phi in &modules {
        let t = torsion_module(phi, DEFAULT_DEG_BOUND, DEFAULT_DENOM_BOUND).map_err(|e| format!("{phi}: {e}"))?;
        ensure(t.order_log() <= 2, || format!("{phi}: torsion A/({}) + A/({})", t.m, t.n))?;
        for x in SearchRegion::new(phi).points() {
            let pre = is_preperiodic(phi, &x, DEFAULT_MAX_ITER);
            ensure(pre != Preperiodic::BudgetExceeded, || format!("{phi}: budget exceeded at {x}"))?;
            ensure((pre == Preperiodic::Yes) == t.points.contains(&x), || format!("{phi}: {x} disagrees"))?;
        }
    }
    Ok(format!("Carlitz has 4 points; {} rank-2 modules within bound", modules.len()))
}

fn reduction() -> CheckResult {
    let mut tested = 0;
    for phi in small_modules() {
        for d in 1..=3 {
            for p in Poly::irreducibles_of_degree(f2(), d) {
                if reduction_type(&phi, &p).map_err(|e| e.to_string())? == ReductionType::BadOrNonIntegral {
                    continue;
                }
                let h = reduced_height(&phi, &p).map_err(|e| e.to_string())?;
                ensure(h == d || h == 2 * d, || format!("{phi} at {p}: height {h}"))?;
                let np = newton_polygon(&phi, &p).map_err(|e| e.to_string())?;
                let (qd, q2d) = (1i64 << d, 1i64 << (2 * d));
                let expect = if h == d {
                    vec![(0.into(), (q2d - qd) as u64), (num_rational::Ratio::new(1, qd - 1), (qd - 1) as u64)]
                } else {
                    vec![(num_rational::Ratio::new(1, q2d - 1), (q2d - 1) as u64)]
                };
                ensure(np.slopes == expect, || format!("{phi} at {p}: slopes {:?}", np.slopes))?;
                tested += 1;
            }
        }
    }
    Ok(format!("{tested} good pairs"))
}

fn full_level() -> CheckResult {
    let g = QuotientGraph::full_level(f2(), 8).map_err(|e| e.to_string())?;
    let mut degrees = Vec::new();
    for level in 0..=10 {
        let at: Vec<usize> = g.vertices().iter().filter(|v| v.level == level).map(|v| v.id).collect();
        ensure(at.len() == 1, || format!("{} vertices at level {level}", at.len()))?;
        degrees.push(g.degree(at[0]));
    }
    ensure(degrees[0] == 1 && degrees[1..].iter().all(|&d| d == 2), || format!("degrees {degrees:?}"))?;
    Ok(format!("degrees {degrees:?}"))
}
