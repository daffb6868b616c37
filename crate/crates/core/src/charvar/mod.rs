//! Torsion points on characteristic varieties, subtorus arrangements and cabling formulas.

mod cabling;
mod count;
mod subtorus;

pub use cabling::{cable_link_poly, torres_specialize};
pub use count::{
    count_common_zeros, subtori_tors, tors2_recursion, tors_count, union_tors,
    union_tors_bruteforce, verify_subtorus, verify_subtorus_detail, TorsionCount,
};
pub use subtorus::{Subtorus, TorusEquation};
