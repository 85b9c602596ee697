//! Quotients `Gamma_0(n) \ T` of the Bruhat-Tits tree.

pub mod export;
pub mod graph;
pub mod groups;
pub mod reduce;

pub use graph::{
    Classified, EdgeSlot, HalfLine, QEdge, QVertex, QuotientGraph, VertexLoc, VertexTag, DEFAULT_EXTRA_DEPTH,
};
pub use groups::{orbit_partition, vertex_group_generators, vertex_group_order, Partition};
pub use reduce::{coset_point, gl2a_reduce, lift_point};
