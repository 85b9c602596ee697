use std::fmt::Write as _;
use std::process::ExitCode;

use btquot::arith::{parse_p1, parse_poly, parse_ratfn, Field, IdealA, Poly};
use btquot::drinfeld::{newton_polygon, reduction_type, torsion_module, DrinfeldModule};
use btquot::harmonic::{eisenstein_index, hecke_matrix, modular_symbol, winding_image, H1Basis};
use btquot::quotient::{export, QuotientGraph};
use btquot::{ArithError, DrinfeldError, ErrorKind, GraphError, HeckeError};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "btquot", version, about = "Quotients of the Bruhat-Tits tree over F_q[T], Hecke operators and Drinfeld modules")]
struct Cli {
    /// Size of the constant field.
    #[arg(long, global = true, default_value_t = 2, env = "BTQUOT_Q")]
    q: u32,
    /// Levels computed past stabilization.
    #[arg(long, global = true, default_value_t = btquot::quotient::DEFAULT_EXTRA_DEPTH, env = "BTQUOT_EXTRA_DEPTH")]
    extra_depth: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Module {
    #[arg(long)]
    g: String,
    #[arg(long)]
    delta: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

#[derive(Subcommand)]
enum Cmd {
    /// The quotient graph of Gamma_0(n).
    QuotientGraph {
        #[arg(long)]
        ideal: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Matrix of T_r on the cycle basis of cuspidal cochains.
    HeckeMatrix {
        #[arg(long)]
        level: String,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        csv: bool,
    },
    /// (T_r - |r| - 1)[0, inf] / (q - 1) as a JSON cochain.
    Winding {
        #[arg(long)]
        level: String,
        #[arg(long)]
        prime: String,
    },
    /// The modular symbol [a, b] as a JSON cochain.
    ModularSymbol {
        #[arg(long)]
        level: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Index of the Eisenstein ideal in the Hecke algebra.
    EisensteinIndex {
        #[arg(long)]
        level: String,
        /// Defaults to deg(level) + 1.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Torsion module of phi(T) = T + g tau + delta tau^2.
    Torsion {
        #[command(flatten)]
        module: Module,
        #[arg(long, default_value_t = btquot::drinfeld::DEFAULT_DEG_BOUND, env = "BTQUOT_DEG_BOUND")]
        deg_bound: usize,
        #[arg(long, default_value_t = btquot::drinfeld::DEFAULT_DENOM_BOUND, env = "BTQUOT_DENOM_BOUND")]
        denom_bound: usize,
    },
    /// Ordinary, supersingular or bad reduction at a prime.
    ReductionType {
        #[command(flatten)]
        module: Module,
        #[arg(long)]
        prime: String,
    },
    /// Root valuations of phi(f)(x)/x at a prime.
    Newton {
        #[command(flatten)]
        module: Module,
        #[arg(long)]
        prime: String,
    },
    /// Run a check suite.
    Verify {
        #[arg(long, value_enum, default_value = "paper")]
        suite: Suite,
    },
}

struct Failure {
    kind: ErrorKind,
    msg: String,
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure { kind: e.kind(), msg: e.to_string() }
            }
        }
    )*};
}
failure_from!(ArithError, GraphError, HeckeError, DrinfeldError);

fn ideal(f: &'static Field, s: &str) -> Result<IdealA, Failure> {
    Ok(IdealA::new(&parse_poly(f, s)?)?)
}

fn graph(cli: &Cli, f: &'static Field, s: &str) -> Result<QuotientGraph, Failure> {
    Ok(QuotientGraph::build(&ideal(f, s)?, cli.extra_depth)?)
}

fn module(f: &'static Field, m: &Module) -> Result<DrinfeldModule, Failure> {
    Ok(DrinfeldModule::new(parse_ratfn(f, &m.g)?, parse_ratfn(f, &m.delta)?)?)
}

fn prime(f: &'static Field, s: &str) -> Result<Poly, Failure> {
    let p = parse_poly(f, s)?;
    if p.degree().unwrap_or(0) == 0 || !p.is_irreducible()? {
        return Err(ArithError::NotPrime(s.to_string()).into());
    }
    Ok(p.monic())
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let f = Field::get(cli.q)?;
    let mut out = String::new();
    match &cli.cmd {
        Cmd::QuotientGraph { ideal, dot, json: as_json } => {
            let g = graph(cli, f, ideal)?;
            if *dot {
                out = export::to_dot(&g);
            } else if *as_json {
                out = export::to_json(&g) + "\n";
            } else {
                writeln!(out, "level {}", g.modulus()).unwrap();
                writeln!(out, "vertices {} edges {}", g.vertices().len(), g.edges().len()).unwrap();
                writeln!(out, "finite part: {} vertices, {} edges", g.finite_vertices().len(), g.finite_edges().len()).unwrap();
                writeln!(out, "half-lines {}", g.half_lines().len()).unwrap();
                writeln!(out, "betti {}", g.betti()).unwrap();
            }
        }
        Cmd::HeckeMatrix { level, prime: r, csv } => {
            let g = graph(cli, f, level)?;
            let r = prime(f, r)?;
            let basis = H1Basis::new(&g)?;
            if basis.rank() == 0 {
                return Err(HeckeError::NoCuspForms.into());
            }
            let m = hecke_matrix(&g, &basis, &r)?;
            let sep = if *csv { "," } else { " " };
            for row in m {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{}", cells.join(sep)).unwrap();
            }
        }
        Cmd::Winding { level, prime: r } => {
            let g = graph(cli, f, level)?;
            let c = winding_image(&g, &prime(f, r)?)?;
            out = json(&c.to_record(&g));
        }
        Cmd::ModularSymbol { level, a, b } => {
            let g = graph(cli, f, level)?;
            let c = modular_symbol(&g, &parse_p1(f, a)?, &parse_p1(f, b)?)?;
            out = json(&c.to_record(&g));
        }
        Cmd::EisensteinIndex { level, degree_bound } => {
            let g = graph(cli, f, level)?;
            let bound = degree_bound.unwrap_or(g.modulus().degree() + 1);
            let basis = H1Basis::new(&g)?;
            out = json(&eisenstein_index(&g, &basis, bound)?);
        }
        Cmd::Torsion { module: m, deg_bound, denom_bound } => {
            let phi = module(f, m)?;
            let t = torsion_module(&phi, *deg_bound, *denom_bound)?;
            writeln!(out, "{phi}").unwrap();
            writeln!(out, "structure A/({}) + A/({})", t.m, t.n).unwrap();
            let show = |v: &[btquot::arith::RatFn]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
            writeln!(out, "generators {}", show(&t.generators)).unwrap();
            writeln!(out, "points {}", show(&t.points)).unwrap();
        }
        Cmd::ReductionType { module: m, prime: p } => {
            let phi = module(f, m)?;
            writeln!(out, "{:?}", reduction_type(&phi, &prime(f, p)?)?).unwrap();
        }
        Cmd::Newton { module: m, prime: p } => {
            let np = newton_polygon(&module(f, m)?, &prime(f, p)?)?;
            for (s, k) in &np.slopes {
                writeln!(out, "{s} {k}").unwrap();
            }
        }
        Cmd::Verify { suite: Suite::Paper } => {
            let mut ok = true;
            for c in btquot::verify::acceptance_suite() {
                match (c.run)() {
                    Ok(detail) => writeln!(out, "PASS {:02} {}: {detail}", c.id, c.name).unwrap(),
                    Err(detail) => {
                        ok = false;
                        writeln!(out, "FAIL {:02} {}: {detail}", c.id, c.name).unwrap()
                    }
                }
            }
            return Ok((out, ok));
        }
    }
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            let (code, label) = match e.kind {
                ErrorKind::Parse => (2, "error"),
                ErrorKind::Precondition => (3, "error"),
                ErrorKind::Invariant => (4, "invariant failed"),
            };
            eprintln!("{label}: {}", e.msg);
            ExitCode::from(code)
        }
    }
}
