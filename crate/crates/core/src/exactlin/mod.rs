//! Exact integer and modular linear algebra.
//!
//! Everything above this module reduces to two engines:
//!
//! * [`int`] — Smith normal form over `Z` with arbitrary-precision entries,
//!   plus solving and kernel computation for systems with per-row moduli.
//!   Intermediate pivots can exceed any fixed word size, so this engine is
//!   the reference implementation.
//! * [`modn`] — the same primitives carried out entirely in `Z/N` for a
//!   word-sized `N`. Row and column operations stay unimodular mod `N`
//!   (Bezout combinations), so diagonalization is exact. This is the hot
//!   path; it is cross-checked against [`int`] in tests.

pub mod int;
pub mod modn;

pub use int::{kernel_mod, smith, solve_mod, solve_with_row_moduli, IntMatrix, SmithDecomposition};
pub use modn::{
    kernel_gens, presentation, snf_mod, solve, subgroup, subquotient_chain, CanonPresentation,
    ModMatrix, SnfMod,
};
