//! Exact arithmetic over `F_q`, `A = F_q[T]`, `F = F_q(T)` and residue rings `A/n`.

pub mod field;
pub mod ideal;
pub mod parse;
pub mod poly;
pub mod ratfn;

pub use field::Field;
pub use ideal::{proj_points, IdealA, P1Space, ProjPoint, ResidueElem};
pub use parse::{parse_p1, parse_poly, parse_ratfn};
pub use poly::Poly;
pub use ratfn::{Place, RatFn};
