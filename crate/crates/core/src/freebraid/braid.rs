use std::fmt;

use serde::{Deserialize, Serialize};

use super::Letter;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A word in the Artin generators `σ_1, …, σ_{n-1}` of the braid group `B_n`.
///
/// Words are read left to right: `σ_i σ_j` means "first `σ_i`, then `σ_j`".
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Unsupported("braid on zero strands".into()));
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::GeneratorOutOfRange {
                    index: l.index,
                    max: strands - 1,
                });
            }
            if l.exp != 1 && l.exp != -1 {
                return Err(Error::Unsupported(format!("letter exponent {}", l.exp)));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// `σ_i^{±1}`.
    pub fn sigma(strands: usize, i: usize, exp: i8) -> Result<Self> {
        Self::new(strands, vec![Letter { index: i, exp }])
    }

    /// Builds a word from signed generator indices, e.g. `[3, 2, -1]` for `σ3 σ2 σ1^-1`.
    pub fn from_signed(strands: usize, gens: &[i32]) -> Result<Self> {
        let letters = gens
            .iter()
            .map(|&g| Letter {
                index: g.unsigned_abs() as usize,
                exp: if g < 0 { -1 } else { 1 },
            })
            .collect();
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::RankMismatch {
                expected: self.strands,
                found: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    index: l.index,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    /// Where each strand ends: entry `k-1` is the final position of the
    /// strand starting at position `k`.
    pub fn strand_permutation(&self) -> Vec<usize> {
        // occupant[pos] = strand currently at pos
        let mut occupant: Vec<usize> = (1..=self.strands).collect();
        for l in &self.letters {
            occupant.swap(l.index - 1, l.index);
        }
        let mut ends = vec![0; self.strands];
        for (pos, &s) in occupant.iter().enumerate() {
            ends[s - 1] = pos + 1;
        }
        ends
    }

    pub fn is_pure(&self) -> bool {
        self.strand_permutation()
            .iter()
            .enumerate()
            .all(|(i, &e)| e == i + 1)
    }

    /// Parses `s3 s2 s1 s3^-1` (also `σ3`, and letters without separating spaces).
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c.is_whitespace() || c == '*' || c == '.' {
                i += 1;
                continue;
            }
            if c != 's' && c != 'σ' {
                return Err(Error::parse(pos, format!("expected 's', found {c:?}")));
            }
            i += 1;
            let (index, next) = read_number(&chars, i)
                .ok_or_else(|| Error::parse(pos, "expected generator index"))?;
            i = next;
            let mut exp = 1i64;
            if i < chars.len() && chars[i].1 == '^' {
                let (e, next) = read_signed(&chars, i + 1)
                    .ok_or_else(|| Error::parse(chars[i].0, "expected exponent"))?;
                exp = e;
                i = next;
            }
            if index == 0 || index >= strands as u64 {
                return Err(Error::parse(
                    pos,
                    format!("generator s{index} out of range for {strands} strands"),
                ));
            }
            let unit = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter {
                    index: index as usize,
                    exp: unit,
                });
            }
        }
        Self::new(strands, letters)
    }
}

pub(crate) fn read_number(chars: &[(usize, char)], mut i: usize) -> Option<(u64, usize)> {
    let start = i;
    let mut value: u64 = 0;
    while i < chars.len() && chars[i].1.is_ascii_digit() {
        value = value
            .checked_mul(10)?
            .checked_add(chars[i].1.to_digit(10)? as u64)?;
        i += 1;
    }
    (i > start).then_some((value, i))
}

pub(crate) fn read_signed(chars: &[(usize, char)], mut i: usize) -> Option<(i64, usize)> {
    let mut sign = 1;
    if i < chars.len() && (chars[i].1 == '-' || chars[i].1 == '−') {
        sign = -1;
        i += 1;
    }
    let (v, next) = read_number(chars, i)?;
    Some((sign * v as i64, next))
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.exp < 0 {
                    format!("s{}^-1", l.index)
                } else {
                    format!("s{}", l.index)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One factor `A_{i,j}^e` of a pure braid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PureFactor {
    pub i: usize,
    pub j: usize,
    pub exp: i64,
}

/// A word in the pure-braid generators
/// `A_{i,j} = σ_{j-1}⋯σ_{i+1} σ_i² σ_{i+1}^{-1}⋯σ_{j-1}^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PureBraidWord {
    strands: usize,
    factors: Vec<PureFactor>,
}

impl PureBraidWord {
    pub fn new(strands: usize, factors: Vec<PureFactor>) -> Result<Self> {
        for f in &factors {
            if f.i == 0 || f.i >= f.j || f.j > strands {
                return Err(Error::Unsupported(format!(
                    "A({},{}) is not a generator on {strands} strands",
                    f.i, f.j
                )));
            }
        }
        let factors = factors.into_iter().filter(|f| f.exp != 0).collect();
        Ok(PureBraidWord { strands, factors })
    }

    pub fn identity(strands: usize) -> Self {
        PureBraidWord {
            strands,
            factors: Vec::new(),
        }
    }

    /// Convenience constructor from `(i, j, exp)` triples.
    pub fn from_triples(strands: usize, triples: &[(usize, usize, i64)]) -> Result<Self> {
        Self::new(
            strands,
            triples
                .iter()
                .map(|&(i, j, exp)| PureFactor { i, j, exp })
                .collect(),
        )
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[PureFactor] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn concat(&self, other: &PureBraidWord) -> Result<PureBraidWord> {
        if self.strands != other.strands {
            return Err(Error::RankMismatch {
                expected: self.strands,
                found: other.strands,
            });
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Ok(PureBraidWord {
            strands: self.strands,
            factors,
        })
    }

    pub fn inverse(&self) -> PureBraidWord {
        PureBraidWord {
            strands: self.strands,
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| PureFactor { exp: -f.exp, ..*f })
                .collect(),
        }
    }

    /// Total exponent of `A_{i,j}` in the word.
    pub fn exponent_sum(&self, i: usize, j: usize) -> i64 {
        let (i, j) = (i.min(j), i.max(j));
        self.factors
            .iter()
            .filter(|f| f.i == i && f.j == j)
            .map(|f| f.exp)
            .sum()
    }

    /// Expansion into Artin generators.
    pub fn to_braid(&self) -> BraidWord {
        let mut letters = Vec::new();
        for f in &self.factors {
            let unit: i8 = if f.exp < 0 { -1 } else { 1 };
            for _ in 0..f.exp.unsigned_abs() {
                for k in (f.i + 1..f.j).rev() {
                    letters.push(Letter { index: k, exp: 1 });
                }
                letters.push(Letter {
                    index: f.i,
                    exp: unit,
                });
                letters.push(Letter {
                    index: f.i,
                    exp: unit,
                });
                for k in f.i + 1..f.j {
                    letters.push(Letter { index: k, exp: -1 });
                }
            }
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Parses `A(1,3) A(2,3) A(4,5)^-1`; whitespace between factors is optional.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut factors = Vec::new();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && (chars[*i].1.is_whitespace() || chars[*i].1 == '*') {
                *i += 1;
            }
        };
        let expect = |i: &mut usize, want: char| -> Result<()> {
            skip_ws(i);
            match chars.get(*i) {
                Some(&(_, c)) if c == want => {
                    *i += 1;
                    Ok(())
                }
                Some(&(pos, c)) => {
                    Err(Error::parse(pos, format!("expected {want:?}, found {c:?}")))
                }
                None => Err(Error::parse(text.len(), format!("expected {want:?}"))),
            }
        };
        loop {
            skip_ws(&mut i);
            if i >= chars.len() {
                break;
            }
            let start = chars[i].0;
            if chars[i].1 == '1' && factors.is_empty() && chars.len() == i + 1 {
                break;
            }
            expect(&mut i, 'A')?;
            expect(&mut i, '(')?;
            skip_ws(&mut i);
            let (a, next) = read_number(&chars, i).ok_or_else(|| {
                Error::parse(chars.get(i).map_or(text.len(), |c| c.0), "expected index")
            })?;
            i = next;
            expect(&mut i, ',')?;
            skip_ws(&mut i);
            let (b, next) = read_number(&chars, i).ok_or_else(|| {
                Error::parse(chars.get(i).map_or(text.len(), |c| c.0), "expected index")
            })?;
            i = next;
            expect(&mut i, ')')?;
            let mut exp = 1;
            if i < chars.len() && chars[i].1 == '^' {
                let (e, next) = read_signed(&chars, i + 1)
                    .ok_or_else(|| Error::parse(chars[i].0, "expected exponent"))?;
                exp = e;
                i = next;
            }
            let (a, b) = (a as usize, b as usize);
            if a == 0 || a >= b || b > strands {
                return Err(Error::parse(
                    start,
                    format!("A({a},{b}) is not a generator on {strands} strands"),
                ));
            }
            factors.push(PureFactor { i: a, j: b, exp });
        }
        Self::new(strands, factors)
    }
}

impl fmt::Display for PureBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| {
                if x.exp == 1 {
                    format!("A({},{})", x.i, x.j)
                } else {
                    format!("A({},{})^{}", x.i, x.j, x.exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The half twist `Δ_n = (σ_{n-1}⋯σ_1)(σ_{n-1}⋯σ_2)⋯(σ_{n-1})`.
pub fn garside(n: usize) -> BraidWord {
    let mut letters = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for k in 1..n {
        for i in (k..n).rev() {
            letters.push(Letter { index: i, exp: 1 });
        }
    }
    BraidWord {
        strands: n,
        letters,
    }
}

fn crossing_sign(perm: &Permutation, i: usize, j: usize) -> i8 {
    if perm.at(i) < perm.at(j) {
        1
    } else {
        -1
    }
}

/// Half-braid of the horizontal configuration of `perm` on `n = |perm|` strands:
/// the product over `j = n, n-1, …, 2` of
/// `σ_{n-1}^{l_{j-1,j}} σ_{n-2}^{l_{j-2,j}} ⋯ σ_{n-j+1}^{l_{1,j}}`,
/// where `l_{i,j} = +1` if `τ_i < τ_j` and `-1` otherwise.
pub fn half_braid(perm: &Permutation) -> BraidWord {
    let n = perm.len();
    let mut letters = Vec::new();
    for j in (2..=n).rev() {
        for i in (1..j).rev() {
            letters.push(Letter {
                index: n - j + i,
                exp: crossing_sign(perm, i, j),
            });
        }
    }
    BraidWord {
        strands: n,
        letters,
    }
}

/// The full braid `β = α Δ α Δ^{-1}` of a horizontal configuration, whose
/// closure is the link at infinity.
pub fn full_braid(perm: &Permutation) -> BraidWord {
    let alpha = half_braid(perm);
    let delta = garside(perm.len());
    alpha
        .concat(&delta)
        .and_then(|w| w.concat(&alpha))
        .and_then(|w| w.concat(&delta.inverse()))
        .expect("same strand count")
}

/// Combed pure braid `ξ` of a horizontal configuration, on `n-1` strands.
///
/// If the top value `n` is not last, the permutation is first rotated (the
/// top plane is moved to the end; see [`Permutation::rotate_top_last`]).
/// Then `ξ = ξ_2 ⋯ ξ_{n-1}` with `ξ_j = Π_{i<j} A_{i,j}^{e_{i,j}}` taken in
/// increasing `i`, where `e_{i,j} = 1` exactly when value `i` sits to the
/// right of value `j` in the permutation.
pub fn xi_braid(perm: &Permutation) -> PureBraidWord {
    let (tau, _) = perm.rotate_top_last();
    let n = tau.len();
    let strands = n.saturating_sub(1).max(1);
    let mut factors = Vec::new();
    for j in 2..n {
        for i in 1..j {
            if tau.position_of(i) > tau.position_of(j) {
                factors.push(PureFactor { i, j, exp: 1 });
            }
        }
    }
    PureBraidWord { strands, factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn garside_expansion() {
        assert!(garside(1).is_empty());
        assert_eq!(garside(3).to_string(), "s2 s1 s2");
        assert_eq!(garside(4).to_string(), "s3 s2 s1 s3 s2 s3");
        assert_eq!(garside(7).len(), 21);
    }

    #[test]
    fn half_braids_of_small_configurations() {
        assert_eq!(half_braid(&perm("1234")), garside(4));
        assert_eq!(
            half_braid(&perm("2134")),
            BraidWord::parse("s3 s2 s1 s3 s2 s3^-1", 4).unwrap()
        );
        assert_eq!(
            half_braid(&perm("21435")),
            BraidWord::parse("s4 s3 s2 s1 s4^-1 s3 s2 s4 s3 s4^-1", 5).unwrap()
        );
    }

    #[test]
    fn combed_braids() {
        assert!(xi_braid(&perm("123456")).is_empty());
        assert_eq!(xi_braid(&perm("21435")).to_string(), "A(1,2) A(3,4)");
        assert_eq!(
            xi_braid(&perm("312546")).to_string(),
            "A(1,3) A(2,3) A(4,5)"
        );
        assert_eq!(
            xi_braid(&perm("341256")).to_string(),
            "A(1,3) A(2,3) A(1,4) A(2,4)"
        );
        assert_eq!(xi_braid(&perm("1")).strands(), 1);
    }

    #[test]
    fn pure_expansion_is_pure() {
        let w = PureBraidWord::parse("A(2,4)A(1,2) A(3,4)^-2 A(1,5)", 5).unwrap();
        assert!(w.to_braid().is_pure());
        assert_eq!(
            PureBraidWord::parse("A(1,3)", 3)
                .unwrap()
                .to_braid()
                .to_string(),
            "s2 s1 s1 s2^-1"
        );
        assert!(!BraidWord::parse("s1", 2).unwrap().is_pure());
        assert_eq!(w.exponent_sum(3, 4), -2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            BraidWord::parse("s1 s4", 4),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            PureBraidWord::parse("A(1,2) A(3,2)", 4),
            Err(Error::Parse { pos: 7, .. })
        ));
        assert!(PureBraidWord::parse("A(1 2)", 4).is_err());
        assert_eq!(BraidWord::parse("s1^2", 3).unwrap().len(), 2);
    }
}
