//! Exact homotopy-type invariants of arrangements of transverse 2-planes in R⁴.
//!
//! An arrangement is described combinatorially (a permutation for horizontal
//! configurations, or a combed pure braid `ξ`). From that description the
//! crate computes Alexander matrices through Fox calculus, multivariable and
//! single-variable Alexander polynomials, determinantal ideals and torsion
//! point counts on characteristic varieties, and the depth-2 normal form
//! data of the arrangement.

pub mod alexander;
pub mod arrangements;
pub mod charvar;
mod error;
pub mod freebraid;
mod intmat;
pub mod laurent;
pub mod perm;

pub use error::{Error, Result};
pub use freebraid::{BraidWord, FreeAutomorphism, FreeWord, PureBraidWord};
pub use laurent::{CyclotomicValue, LaurentPoly, MonomialSubstitution, PolyMatrix};
pub use perm::Permutation;
