//! Harmonic cochains, modular symbols and Hecke operators on `Gamma_0(n) \ T`.

pub mod algebra;
pub mod charpoly;
pub mod cochain;
pub mod hecke;
pub mod lattice;
pub mod symbol;

pub use algebra::{eisenstein_index, good_primes, hecke_matrices, lambda_lattice, EisensteinReport, LambdaLattice};
pub use charpoly::{charpoly, count_roots, eigenvalues_within_bound, ramanujan_bound, RootCount};
pub use cochain::{is_harmonic, Cochain, CochainRecord, Tail};
pub use hecke::{
    formal_immersion_witness, hecke_apply, hecke_coset_reps, hecke_matrix, in_hecke_set, winding_image, H1Basis,
    IntMatrix, WitnessReport,
};
pub use symbol::{modular_symbol, symbol_zero_infinity, Cusp};
