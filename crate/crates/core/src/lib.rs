//! Quotient graphs of the Bruhat-Tits tree of `PGL_2(F_q((1/T)))` under Hecke
//! congruence groups `Gamma_0(n)` of `GL_2(F_q[T])`, harmonic cochains, Hecke
//! operators, modular symbols, and rank-2 Drinfeld modules over `F_q(T)`.

pub mod arith;
pub mod drinfeld;
pub mod error;
pub mod harmonic;
pub mod quotient;
pub mod tree;
pub mod verify;

pub use error::{ArithError, DrinfeldError, ErrorKind, GraphError, HeckeError};
