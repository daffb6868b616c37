use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::combinatorics::{blocks, contract_blocks};
use crate::charvar::Subtorus;
use crate::error::{Error, Result};
use crate::freebraid::FreeWord;
use crate::perm::Permutation;

/// Depth-≤2 normal form `A(I_1, …, I_r, J)`: decreasing blocks of sizes
/// `|I_1| ≤ ⋯ ≤ |I_r|` (each at least 2) followed by one increasing block `J`.
/// `r = 0` is the complex arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalFormD2 {
    neg_sizes: Vec<usize>,
    j_size: usize,
}

impl NormalFormD2 {
    pub fn new(neg_sizes: Vec<usize>, j_size: usize) -> Result<Self> {
        let bad = |msg: &str| Err(Error::Unsupported(format!("invalid normal form: {msg}")));
        if j_size == 0 {
            return bad("|J| must be at least 1");
        }
        if neg_sizes.iter().any(|&s| s < 2) {
            return bad("negative blocks have size at least 2");
        }
        if neg_sizes.windows(2).any(|w| w[0] > w[1]) {
            return bad("negative block sizes must be nondecreasing");
        }
        if neg_sizes.len() == 1 && neg_sizes[0] > j_size {
            return bad("|I_1| ≤ |J| when r = 1");
        }
        Ok(NormalFormD2 { neg_sizes, j_size })
    }

    pub fn n(&self) -> usize {
        self.j_size + self.neg_sizes.iter().sum::<usize>()
    }

    pub fn r(&self) -> usize {
        self.neg_sizes.len()
    }

    /// The sizes `S(A) = {|I_1|, …, |I_r|}`.
    pub fn neg_sizes(&self) -> &[usize] {
        &self.neg_sizes
    }

    pub fn j_size(&self) -> usize {
        self.j_size
    }

    /// 1-based index ranges of the negative blocks.
    pub fn neg_blocks(&self) -> Vec<std::ops::RangeInclusive<usize>> {
        let mut start = 1;
        self.neg_sizes
            .iter()
            .map(|&s| {
                let r = start..=start + s - 1;
                start += s;
                r
            })
            .collect()
    }

    pub fn j_block(&self) -> std::ops::RangeInclusive<usize> {
        let n = self.n();
        n - self.j_size + 1..=n
    }

    /// The permutation in normal form, e.g. `(2,1,4,3,5,6)` for sizes `{2,2}`, `|J| = 2`.
    pub fn permutation(&self) -> Permutation {
        let mut values = Vec::with_capacity(self.n());
        for b in self.neg_blocks() {
            values.extend(b.rev());
        }
        values.extend(self.j_block());
        Permutation::new(values).expect("blocks cover 1..n")
    }

    /// Free basis adapted to the blocks: `y_b = x_a x_{a+1} ⋯ x_b` for each
    /// decreasing block `{a..b}`, and `y_i = x_i` otherwise (rank `n - 1`).
    pub fn block_basis(&self) -> Vec<FreeWord> {
        let rank = self.n().saturating_sub(1).max(1);
        let mut basis: Vec<FreeWord> = (1..=rank).map(|i| FreeWord::generator(rank, i)).collect();
        for b in self.neg_blocks() {
            let (a, e) = (*b.start(), *b.end());
            let word: Vec<i32> = (a..=e).map(|i| i as i32).collect();
            basis[e - 1] = FreeWord::from_signed(rank, &word).unwrap();
        }
        basis
    }
}

impl fmt::Display for NormalFormD2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.neg_sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "S={{{}}}, |J|={}", sizes.join(","), self.j_size)
    }
}

/// Normal form of a permutation whose contraction reaches `(1)` in at most two rounds.
pub fn depth2_normal_form(perm: &Permutation) -> Result<NormalFormD2> {
    let (rot, _) = perm.rotate_top_last();
    let n = rot.len();
    if rot.is_identity() {
        return NormalFormD2::new(Vec::new(), n);
    }
    if !contract_blocks(&rot).is_identity() {
        return Err(Error::NotDepthTwo(perm.to_string()));
    }
    let mut neg: Vec<usize> = blocks(&rot)
        .iter()
        .filter(|b| b.negative)
        .map(|b| b.len)
        .collect();
    neg.sort_unstable();
    let mut j = n - neg.iter().sum::<usize>();
    // A single decreasing block may trade places with the increasing one.
    if neg.len() == 1 && neg[0] > j {
        std::mem::swap(&mut neg[0], &mut j);
        if neg[0] < 2 {
            neg.clear();
            j = n;
        }
    }
    NormalFormD2::new(neg, j)
}

/// Codimension lists of the components of the bottom characteristic variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaLists {
    /// Components through the identity, sorted.
    pub through_one: Vec<usize>,
    /// All components, sorted.
    pub all: Vec<usize>,
}

pub fn sigma_lists(nf: &NormalFormD2) -> SigmaLists {
    let n = nf.n();
    let r = nf.r();
    if r == 0 {
        let v = vec![if n >= 3 { 1 } else { 0 }];
        return SigmaLists {
            through_one: v.clone(),
            all: v,
        };
    }
    let mut through_one: Vec<usize> = nf.neg_sizes.iter().map(|&s| n + 1 - s).collect();
    if nf.j_size > 1 {
        through_one.push(n + 1 - nf.j_size);
    }
    let mut all = through_one.clone();
    for mask in 1u32..(1 << r) {
        let rest: usize = (0..r)
            .filter(|p| mask & (1 << p) == 0)
            .map(|p| nf.neg_sizes[p] - 1)
            .sum();
        all.push(r + 1 + rest);
    }
    through_one.sort_unstable();
    all.sort_unstable();
    SigmaLists { through_one, all }
}

/// Formats a sorted codimension multiset as `3,4_2,5_3`.
pub fn format_codims(list: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < list.len() {
        let mut j = i;
        while j < list.len() && list[j] == list[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(list[i].to_string());
        } else {
            parts.push(format!("{}_{}", list[i], j - i));
        }
        i = j;
    }
    parts.join(",")
}

/// Inverse of [`format_codims`].
pub fn parse_codims(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let (v, mult) = match part.trim().split_once('_') {
            Some((v, m)) => (v, m),
            None => (part.trim(), "1"),
        };
        let v: usize = v
            .parse()
            .map_err(|_| Error::parse(offset, format!("bad codimension {part:?}")))?;
        let m: usize = mult
            .parse()
            .map_err(|_| Error::parse(offset, format!("bad multiplicity {part:?}")))?;
        out.extend(std::iter::repeat(v).take(m));
        offset += part.len() + 1;
    }
    out.sort_unstable();
    Ok(out)
}

/// Components of the bottom characteristic variety `V_{n-2}`, in the
/// coordinates of [`NormalFormD2::block_basis`] (plus `t_n`).
///
/// With `Ǐ = ([1,n] ∖ I) ∪ {max I}`: the subtori `T(Ǐ_p)`, `T(J̌)` when
/// `|J| > 1`, and for each nonempty `P ⊆ [1,r]` the translated subtorus
/// `{t_i = 1 : i ∈ ∪_{p∉P} I_p ∪ {n}} ∩ {t_{max I_p} = -1 : p ∈ P}`.
pub fn bottom_components_d2(nf: &NormalFormD2) -> Vec<Subtorus> {
    let n = nf.n();
    let r = nf.r();
    if r == 0 {
        return if n >= 3 {
            vec![Subtorus::coordinate(n, &[n], &[])]
        } else {
            vec![Subtorus::coordinate(n, &[], &[])]
        };
    }
    let check = |block: &[usize]| -> Vec<usize> {
        let max = *block.iter().max().unwrap();
        (1..=n)
            .filter(|i| !block.contains(i) || *i == max)
            .collect()
    };
    let neg: Vec<Vec<usize>> = nf.neg_blocks().into_iter().map(|b| b.collect()).collect();
    let mut out = Vec::new();
    for block in &neg {
        out.push(Subtorus::coordinate(n, &check(block), &[]));
    }
    if nf.j_size > 1 {
        let j: Vec<usize> = nf.j_block().collect();
        out.push(Subtorus::coordinate(n, &check(&j), &[]));
    }
    for mask in 1u32..(1 << r) {
        let mut ones: Vec<usize> = (0..r)
            .filter(|p| mask & (1 << p) == 0)
            .flat_map(|p| neg[p].iter().copied())
            .collect();
        ones.push(n);
        let minus: Vec<usize> = (0..r)
            .filter(|p| mask & (1 << p) != 0)
            .map(|p| *neg[p].iter().max().unwrap())
            .collect();
        out.push(Subtorus::coordinate(n, &ones, &minus));
    }
    out
}

/// Partition numbers `p(0), …, p(m)` by Euler's pentagonal recurrence.
pub fn partition_numbers(m: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > k {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc += sign * &p[k - g1];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= k {
                acc += sign * &p[k - g2];
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|x| x.to_biguint().expect("partition numbers are positive"))
        .collect()
}

/// Number of homotopy classes of depth-≤2 completely decomposable
/// arrangements of `n` planes: `p(n-1) - ⌊(n-1)/2⌋`.
pub fn count_d2_classes(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Unsupported("n must be at least 1".into()));
    }
    let p = partition_numbers(n - 1);
    Ok(&p[n - 1] - BigUint::from((n - 1) / 2))
}

/// Every valid normal form on `n` planes, the complex arrangement first.
pub fn enumerate_d2_normal_forms(n: usize) -> Vec<NormalFormD2> {
    let mut out = vec![NormalFormD2::new(Vec::new(), n.max(1)).unwrap()];
    fn rec(n: usize, min: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<NormalFormD2>) {
        if !cur.is_empty() && used < n {
            if let Ok(nf) = NormalFormD2::new(cur.clone(), n - used) {
                out.push(nf);
            }
        }
        let mut s = min;
        while used + s < n {
            cur.push(s);
            rec(n, s, used + s, cur, out);
            cur.pop();
            s += 1;
        }
    }
    rec(n, 2, 0, &mut Vec::new(), &mut out);
    out
}

/// `Tors_{p,1}` of a depth-≤2 arrangement from its normal form:
/// `p^{n-r-1}(p^{r+1} - (p-1)^{r+1})` for odd `p`, `2^{n-1}` for `p = 2`.
pub fn depth2_tors1(nf: &NormalFormD2, p: u64) -> Option<u128> {
    let (n, r) = (nf.n() as u32, nf.r() as u32);
    if n < 3 {
        return None;
    }
    let p = p as u128;
    if p == 2 {
        return Some(1u128 << (n - 1));
    }
    Some(p.pow(n - r - 1) * (p.pow(r + 1) - (p - 1).pow(r + 1)))
}

impl SigmaLists {
    pub fn through_one_text(&self) -> String {
        format_codims(&self.through_one)
    }

    pub fn all_text(&self) -> String {
        format_codims(&self.all)
    }

    /// Lengths `(d_1, d)`.
    pub fn lengths(&self) -> (usize, usize) {
        (self.through_one.len(), self.all.len())
    }
}
