use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::braid::{read_number, read_signed, BraidWord};
use super::Letter;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A freely reduced word in the free group on `x_1, …, x_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if let Some(top) = stack.last() {
        if top.index == l.index && top.exp == -l.exp {
            stack.pop();
            return;
        }
    }
    stack.push(l);
}

impl FreeWord {
    /// Builds and freely reduces a word.
    pub fn new(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut stack = Vec::new();
        for l in letters {
            if l.index == 0 || l.index > rank {
                return Err(Error::GeneratorOutOfRange {
                    index: l.index,
                    max: rank,
                });
            }
            if l.exp != 1 && l.exp != -1 {
                return Err(Error::Unsupported(format!("letter exponent {}", l.exp)));
            }
            push_reduced(&mut stack, l);
        }
        Ok(FreeWord {
            rank,
            letters: stack,
        })
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_i`.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "generator x{i} out of range");
        FreeWord {
            rank,
            letters: vec![Letter { index: i, exp: 1 }],
        }
    }

    /// Builds a word from signed generator indices, e.g. `[1, 2, -1]` for `x1 x2 x1^-1`.
    pub fn from_signed(rank: usize, gens: &[i32]) -> Result<Self> {
        Self::new(
            rank,
            gens.iter().map(|&g| Letter {
                index: g.unsigned_abs() as usize,
                exp: if g < 0 { -1 } else { 1 },
            }),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.rank, other.rank, "free words of different rank");
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        FreeWord {
            rank: self.rank,
            letters: stack,
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
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

    /// Replaces each `x_i` by `images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Result<FreeWord> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, |w| w.rank);
        let mut stack: Vec<Letter> = Vec::new();
        for l in &self.letters {
            let img = &images[l.index - 1];
            if l.exp > 0 {
                for &m in &img.letters {
                    push_reduced(&mut stack, m);
                }
            } else {
                for m in img.letters.iter().rev() {
                    push_reduced(
                        &mut stack,
                        Letter {
                            index: m.index,
                            exp: -m.exp,
                        },
                    );
                }
            }
        }
        Ok(FreeWord {
            rank: target,
            letters: stack,
        })
    }

    /// Exponent-sum vector; the image in the abelianization `Z^rank`.
    pub fn abelianize(&self) -> Vec<i32> {
        let mut v = vec![0; self.rank];
        for l in &self.letters {
            v[l.index - 1] += i32::from(l.exp);
        }
        v
    }

    /// Abelianized Fox derivative `∂w/∂x_j` in `Z[t_1^{±1}, …, t_rank^{±1}]`.
    ///
    /// An occurrence `x_j` contributes `+t^{prefix}`, an occurrence `x_j^{-1}`
    /// contributes `-t^{prefix}·t_j^{-1}`.
    pub fn fox_derivative_ab(&self, j: usize) -> Result<LaurentPoly> {
        if j == 0 || j > self.rank {
            return Err(Error::GeneratorOutOfRange {
                index: j,
                max: self.rank,
            });
        }
        let mut out = LaurentPoly::zero(self.rank);
        let mut prefix = vec![0i32; self.rank];
        for l in &self.letters {
            if l.index == j {
                if l.exp > 0 {
                    out.add_term(prefix.clone(), BigInt::from(1));
                } else {
                    let mut e = prefix.clone();
                    e[j - 1] -= 1;
                    out.add_term(e, BigInt::from(-1));
                }
            }
            prefix[l.index - 1] += i32::from(l.exp);
        }
        Ok(out)
    }

    /// Parses `x1 x2 x1^-1` (letters `x` or `y`; spaces optional; `1` is the identity).
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c.is_whitespace() || c == '*' || c == '.' {
                i += 1;
                continue;
            }
            if c == '1' && letters.is_empty() && text.trim() == "1" {
                break;
            }
            if c != 'x' && c != 'y' {
                return Err(Error::parse(
                    pos,
                    format!("expected generator, found {c:?}"),
                ));
            }
            let (index, next) = read_number(&chars, i + 1)
                .ok_or_else(|| Error::parse(pos, "expected generator index"))?;
            i = next;
            let mut exp = 1i64;
            if i < chars.len() && chars[i].1 == '^' {
                let (e, next) = read_signed(&chars, i + 1)
                    .ok_or_else(|| Error::parse(chars[i].0, "expected exponent"))?;
                exp = e;
                i = next;
            }
            if index == 0 || index as usize > rank {
                return Err(Error::parse(
                    pos,
                    format!("generator {c}{index} out of range 1..={rank}"),
                ));
            }
            let unit: i8 = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter {
                    index: index as usize,
                    exp: unit,
                });
            }
        }
        Self::new(rank, letters)
    }

    /// Display with a chosen letter name (`x` or `y`).
    pub fn display_with(&self, name: char) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|l| {
                if l.exp < 0 {
                    format!("{name}{}^-1", l.index)
                } else {
                    format!("{name}{}", l.index)
                }
            })
            .collect()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with('x'))
    }
}

/// An endomorphism of the free group given by the images of its generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    /// Checks that the images have the right rank and form a basis.
    pub fn new(images: Vec<FreeWord>) -> Result<Self> {
        let rank = images.len();
        for w in &images {
            if w.rank != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: w.rank,
                });
            }
        }
        nielsen_inverse_words(&images)?;
        Ok(FreeAutomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        FreeAutomorphism {
            rank,
            images: (1..=rank).map(|i| FreeWord::generator(rank, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        w.substitute(&self.images)
    }

    /// `self` followed by `next`: `x ↦ next(self(x))`.
    pub fn then(&self, next: &FreeAutomorphism) -> Result<FreeAutomorphism> {
        let images = self
            .images
            .iter()
            .map(|w| next.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeAutomorphism {
            rank: self.rank,
            images,
        })
    }

    pub fn inverse(&self) -> Result<FreeAutomorphism> {
        let images = nielsen_inverse_words(&self.images)?;
        Ok(FreeAutomorphism {
            rank: self.rank,
            images,
        })
    }

    /// Abelianized image matrix: row `i` is the exponent vector of the image of `x_i`.
    pub fn abelian_matrix(&self) -> Vec<Vec<i32>> {
        self.images.iter().map(|w| w.abelianize()).collect()
    }

    /// The Artin action of a braid on `F_n`: `σ_i` sends `x_i ↦ x_i x_{i+1} x_i^{-1}`
    /// and `x_{i+1} ↦ x_i`; `σ_i^{-1}` acts by the inverse substitution.
    /// Letters are applied left to right, so `act(b_1 b_2) = act(b_2) ∘ act(b_1)`.
    pub fn artin(braid: &BraidWord) -> FreeAutomorphism {
        let n = braid.strands();
        let mut images: Vec<FreeWord> = (1..=n).map(|i| FreeWord::generator(n, i)).collect();
        for l in braid.letters() {
            let sub = artin_letter_images(n, l.index, l.exp);
            for w in images.iter_mut() {
                *w = w.substitute(&sub).expect("rank matches");
            }
        }
        FreeAutomorphism { rank: n, images }
    }

    /// Rewrites `self` in the basis `y_i = basis[i-1]` (words in the `x`
    /// letters): the result sends `y_i` to `self(basis_i)` expressed in `y` letters.
    pub fn change_basis(&self, basis: &[FreeWord]) -> Result<FreeAutomorphism> {
        if basis.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: basis.len(),
            });
        }
        for w in basis {
            if w.rank != self.rank {
                return Err(Error::RankMismatch {
                    expected: self.rank,
                    found: w.rank,
                });
            }
        }
        let x_in_y = nielsen_inverse_words(basis)?;
        let images = basis
            .iter()
            .map(|b| self.apply(b).and_then(|w| w.substitute(&x_in_y)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeAutomorphism {
            rank: self.rank,
            images,
        })
    }
}

/// Images of `x_1..x_n` under the Artin action of `σ_index^{exp}`.
fn artin_letter_images(n: usize, index: usize, exp: i8) -> Vec<FreeWord> {
    let x = |i: usize| i as i32;
    let (i, j) = (x(index), x(index + 1));
    let mut images: Vec<FreeWord> = (1..=n).map(|k| FreeWord::generator(n, k)).collect();
    if exp > 0 {
        images[index - 1] = FreeWord::from_signed(n, &[i, j, -i]).unwrap();
        images[index] = FreeWord::from_signed(n, &[i]).unwrap();
    } else {
        images[index - 1] = FreeWord::from_signed(n, &[j]).unwrap();
        images[index] = FreeWord::from_signed(n, &[-j, i, j]).unwrap();
    }
    images
}

/// Given words `b_1..b_n` in the `x` letters forming a free basis, returns
/// words `c_1..c_n` in the `y` letters with `c_i(b_1, …, b_n) = x_i`.
///
/// Uses Nielsen reduction: repeatedly replace some `u_i` by one of
/// `u_i u_j^{±1}`, `u_j^{±1} u_i` while that shortens it. A basis reduces to
/// a signed permutation of the generators; anything else is rejected.
pub fn nielsen_inverse_words(basis: &[FreeWord]) -> Result<Vec<FreeWord>> {
    let n = basis.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let rank = basis[0].rank;
    if rank != n {
        return Err(Error::NotABasis(format!(
            "{n} words in a free group of rank {rank}"
        )));
    }
    let abel: Vec<Vec<i64>> = basis
        .iter()
        .map(|w| w.abelianize().iter().map(|&x| x as i64).collect())
        .collect();
    if crate::intmat::det(&abel).magnitude() != &1u32.into() {
        return Err(Error::NotABasis(
            "abelianized matrix is not unimodular".into(),
        ));
    }
    // (current word in x-letters, the same element written in y-letters)
    let mut pairs: Vec<(FreeWord, FreeWord)> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), FreeWord::generator(n, i + 1)))
        .collect();
    loop {
        let mut best: Option<(usize, usize, usize, FreeWord, FreeWord)> = None;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (ui, yi) = &pairs[i];
                let (uj, yj) = &pairs[j];
                let uj_inv = uj.inverse();
                let yj_inv = yj.inverse();
                let candidates = [
                    (ui.mul(uj), yi.mul(yj)),
                    (ui.mul(&uj_inv), yi.mul(&yj_inv)),
                    (uj.mul(ui), yj.mul(yi)),
                    (uj_inv.mul(ui), yj_inv.mul(yi)),
                ];
                for (cu, cy) in candidates {
                    if cu.len() < ui.len() {
                        let gain = ui.len() - cu.len();
                        if best.as_ref().map_or(true, |b| gain > b.1) {
                            best = Some((i, gain, j, cu, cy));
                        }
                    }
                }
            }
        }
        match best {
            Some((i, _, _, cu, cy)) => pairs[i] = (cu, cy),
            None => break,
        }
    }
    let mut out: Vec<Option<FreeWord>> = vec![None; n];
    for (u, y) in pairs {
        if u.len() != 1 {
            return Err(Error::NotABasis(
                "Nielsen reduction does not reach the standard generators".into(),
            ));
        }
        let l = u.letters[0];
        let expr = if l.exp > 0 { y } else { y.inverse() };
        if out[l.index - 1].replace(expr).is_some() {
            return Err(Error::NotABasis(
                "repeated generator after reduction".into(),
            ));
        }
    }
    Ok(out
        .into_iter()
        .map(|w| w.expect("all generators hit"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freebraid::{garside, PureBraidWord};

    fn w(s: &str, rank: usize) -> FreeWord {
        FreeWord::parse(s, rank).unwrap()
    }

    #[test]
    fn reduction_and_parse() {
        assert_eq!(w("x1 x2 x2^-1 x1^-1", 2), FreeWord::identity(2));
        assert_eq!(w("x1x2^2", 2).len(), 3);
        assert_eq!(w("x1 x2 x1^-1", 2).to_string(), "x1x2x1^-1");
        assert!(FreeWord::parse("x3", 2).is_err());
    }

    #[test]
    fn artin_generator_action() {
        let s1 = BraidWord::parse("s1", 2).unwrap();
        let a = FreeAutomorphism::artin(&s1);
        assert_eq!(a.apply(&w("x1", 2)).unwrap(), w("x1 x2 x1^-1", 2));
        assert_eq!(a.apply(&w("x2", 2)).unwrap(), w("x1", 2));
    }

    #[test]
    fn pure_generator_on_first_letter() {
        let xi = PureBraidWord::parse("A(1,2)", 3).unwrap().to_braid();
        let a = FreeAutomorphism::artin(&xi);
        assert_eq!(a.apply(&w("x1", 3)).unwrap(), w("x1 x2 x1 x2^-1 x1^-1", 3));
    }

    #[test]
    fn full_twist_is_conjugation() {
        for n in 2..=5 {
            let d = garside(n);
            let a = FreeAutomorphism::artin(&d.concat(&d).unwrap());
            let prod: Vec<i32> = (1..=n as i32).collect();
            let c = FreeWord::from_signed(n, &prod).unwrap();
            for i in 1..=n {
                let x = FreeWord::generator(n, i);
                assert_eq!(a.apply(&x).unwrap(), c.mul(&x).mul(&c.inverse()));
            }
        }
    }

    #[test]
    fn basis_change_of_a12() {
        let xi = PureBraidWord::parse("A(1,2)", 3).unwrap().to_braid();
        let a = FreeAutomorphism::artin(&xi);
        let basis = vec![w("x1", 3), w("x1 x2", 3), w("x3", 3)];
        let b = a.change_basis(&basis).unwrap();
        assert_eq!(b.images()[0], w("y2 y1 y2^-1", 3));
        assert_eq!(b.images()[1], w("y2", 3));
        assert_eq!(b.images()[2], w("y3", 3));
        assert_eq!(
            a.change_basis(FreeAutomorphism::identity(3).images())
                .unwrap(),
            a
        );
    }

    #[test]
    fn non_bases_rejected() {
        let bad = vec![w("x1^2", 2), w("x2", 2)];
        assert!(matches!(
            nielsen_inverse_words(&bad),
            Err(Error::NotABasis(_))
        ));
        // unimodular abelianization, but [x1,x2]x1 does not complete x2 to a basis
        let twisted = vec![w("x1 x2 x1^-1 x2^-1 x1", 2), w("x2", 2)];
        assert!(matches!(
            nielsen_inverse_words(&twisted),
            Err(Error::NotABasis(_))
        ));
    }

    #[test]
    fn fox_derivatives() {
        assert_eq!(
            w("x1 x2", 2).fox_derivative_ab(2).unwrap(),
            LaurentPoly::parse("t1", 2).unwrap()
        );
        assert_eq!(
            w("x1^-1", 1).fox_derivative_ab(1).unwrap(),
            LaurentPoly::parse("-t^-1", 1).unwrap()
        );
        assert_eq!(
            w("x2 x1 x2^-1", 2).fox_derivative_ab(2).unwrap(),
            LaurentPoly::parse("1 - t1", 2).unwrap()
        );
        assert!(w("x1", 2).fox_derivative_ab(3).is_err());
    }
}
