//! The Bruhat-Tits tree of `PGL_2(F_inf)`, `F_inf = F_q((1/T))`.

pub mod laurent;
pub mod matrix;
pub mod vertex;

pub use laurent::LaurentPi;
pub use matrix::Mat2;
pub use vertex::{edge_of_matrix, edge_reverse, vertex_normal_form, EdgeNF, VertexNF};
