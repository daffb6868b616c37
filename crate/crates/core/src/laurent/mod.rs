//! Exact Laurent-polynomial arithmetic over the integers.

mod cyclotomic;
mod matrix;
mod parse;
mod poly;
mod subst;

pub(crate) use cyclotomic::check_prime;
pub use cyclotomic::{is_prime, torsion_point, CyclotomicValue, TorsionEvaluator};
pub use matrix::{combinations, PolyMatrix};
pub use poly::{Exponents, LaurentPoly};
pub use subst::{MonomialSubstitution, SignedMonomial};
