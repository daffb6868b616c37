//! Braid words, free-group words, the Artin action and Fox calculus.

mod braid;
mod free;

use serde::{Deserialize, Serialize};

pub use braid::{full_braid, garside, half_braid, xi_braid, BraidWord, PureBraidWord, PureFactor};
pub use free::{nielsen_inverse_words, FreeAutomorphism, FreeWord};

/// A generator index (1-based) with exponent `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub exp: i8,
}

/// Applies the Artin action of `braid` to `word`.
pub fn artin_act(braid: &BraidWord, word: &FreeWord) -> crate::Result<FreeWord> {
    if braid.strands() != word.rank() {
        return Err(crate::Error::RankMismatch {
            expected: braid.strands(),
            found: word.rank(),
        });
    }
    FreeAutomorphism::artin(braid).apply(word)
}
