//! Rank-2 Drinfeld modules over `F_q(T)`: twisted polynomials, torsion, reduction.

pub mod module;
pub mod reduction;
pub mod skew;
pub mod torsion;

pub use module::{DrinfeldModule, EscapeBound};
pub use reduction::{newton_polygon, reduced_height, reduction_type, NewtonPolygon, ReductionType};
pub use skew::SkewPoly;
pub use torsion::{
    is_preperiodic, torsion_module, torsion_points, Preperiodic, SearchRegion, TorsionModule, DEFAULT_DEG_BOUND,
    DEFAULT_DENOM_BOUND, DEFAULT_MAX_ITER,
};
