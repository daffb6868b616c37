use super::spec::Resolved;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Symmetric matrix of linking numbers, zero on the diagonal.
pub type LinkingMatrix = Vec<Vec<i8>>;

/// `l_{i,j} = -1` when positions `i < j` are inverted in `τ`, `+1` otherwise.
pub fn linking_matrix_of_perm(perm: &Permutation) -> LinkingMatrix {
    let n = perm.len();
    let mut m = vec![vec![0i8; n]; n];
    for i in 1..=n {
        for j in i + 1..=n {
            let s = if perm.at(i) < perm.at(j) { 1 } else { -1 };
            m[i - 1][j - 1] = s;
            m[j - 1][i - 1] = s;
        }
    }
    m
}

/// Linking numbers read off a combed braid: strands `i < j < n` link with
/// sign `1 - 2·(exponent sum of A_{i,j})`, and every strand links the
/// fiber component `n` positively, up to the orientation reversals in `r`.
/// Indexed by component via `labels`.
pub(crate) fn linking_from_xi(r: &Resolved) -> LinkingMatrix {
    let n = r.n;
    let mut m = vec![vec![0i8; n]; n];
    for i in 1..=n {
        for j in i + 1..=n {
            let s = if j == n {
                1
            } else {
                (1 - 2 * r.xi.exponent_sum(i, j)).clamp(-1, 1) as i8
            };
            let s = if r.reversed[i - 1] != r.reversed[j - 1] {
                -s
            } else {
                s
            };
            let (a, b) = (r.labels[i - 1] - 1, r.labels[j - 1] - 1);
            m[a][b] = s;
            m[b][a] = s;
        }
    }
    m
}

/// A relabeling carrying one linking matrix to another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// `perm[i]` is the component of the second matrix matched with component `i+1` of the first.
    pub perm: Vec<usize>,
    /// Whether all signs had to be reversed (mirror image).
    pub mirrored: bool,
}

/// Searches `S_n` in lexicographic order for `π` with `m2[π(i)][π(j)] = m1[i][j]`,
/// first as is and then with all signs of `m2` reversed.
pub fn linking_equivalent(m1: &LinkingMatrix, m2: &LinkingMatrix) -> Option<Relabeling> {
    let n = m1.len();
    if m2.len() != n {
        return None;
    }
    for mirrored in [false, true] {
        let s: i8 = if mirrored { -1 } else { 1 };
        let mut assigned = Vec::with_capacity(n);
        let mut used = vec![false; n];
        if search(m1, m2, s, &mut assigned, &mut used) {
            return Some(Relabeling {
                perm: assigned.iter().map(|&x| x + 1).collect(),
                mirrored,
            });
        }
    }
    None
}

fn search(
    m1: &LinkingMatrix,
    m2: &LinkingMatrix,
    s: i8,
    assigned: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = assigned.len();
    if i == m1.len() {
        return true;
    }
    for c in 0..m1.len() {
        if used[c] {
            continue;
        }
        let ok = assigned
            .iter()
            .enumerate()
            .all(|(k, &d)| s * m2[d][c] == m1[k][i]);
        if ok {
            used[c] = true;
            assigned.push(c);
            if search(m1, m2, s, assigned, used) {
                return true;
            }
            assigned.pop();
            used[c] = false;
        }
    }
    false
}

/// Replaces the value `k` by a run of `r + 1` consecutive values (increasing
/// for `sign = +1`, decreasing for `sign = -1`) and shifts larger values up by `r`.
pub fn cable_perm(perm: &Permutation, k: usize, sign: i8, r: usize) -> Result<Permutation> {
    if k == 0 || k > perm.len() {
        return Err(Error::InvalidPermutation(format!(
            "value {k} does not occur in {perm}"
        )));
    }
    let mut out = Vec::with_capacity(perm.len() + r);
    for &v in perm.values() {
        if v == k {
            if sign >= 0 {
                out.extend(k..=k + r);
            } else {
                out.extend((k..=k + r).rev());
            }
        } else if v > k {
            out.push(v + r);
        } else {
            out.push(v);
        }
    }
    Permutation::new(out)
}

/// Undoes [`cable_perm`]: the values `k..=k+r` must sit in adjacent
/// positions in monotone order; they are merged back into `k`.
pub fn decable_perm(perm: &Permutation, k: usize, r: usize) -> Result<Permutation> {
    let n = perm.len();
    if k == 0 || k + r > n {
        return Err(Error::InvalidPermutation(format!(
            "values {k}..={} do not all occur in {perm}",
            k + r
        )));
    }
    let first = perm.position_of(k);
    let run: Vec<usize> = (0..=r).map(|d| perm.position_of(k + d)).collect();
    let up = run.iter().enumerate().all(|(d, &p)| p == first + d);
    let down = run.iter().enumerate().all(|(d, &p)| p + d == first);
    if !(up || down) {
        return Err(Error::InvalidPermutation(format!(
            "values {k}..={} are not a block of {perm}",
            k + r
        )));
    }
    let values = perm
        .values()
        .iter()
        .filter(|&&v| v <= k || v > k + r)
        .map(|&v| if v > k + r { v - r } else { v })
        .collect();
    Permutation::new(values)
}

/// A maximal run of consecutive values found by [`contract_blocks`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// 1-based position of the first entry.
    pub start: usize,
    pub len: usize,
    /// True for a decreasing run of length at least 2.
    pub negative: bool,
}

/// Splits `τ` greedily into maximal runs of consecutive values.
pub fn blocks(perm: &Permutation) -> Vec<Block> {
    let v = perm.values();
    let mut out = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        let mut negative = false;
        if j < v.len() && v[j] == v[i] + 1 {
            while j < v.len() && v[j] == v[j - 1] + 1 {
                j += 1;
            }
        } else if j < v.len() && v[j] + 1 == v[i] {
            negative = true;
            while j < v.len() && v[j] + 1 == v[j - 1] {
                j += 1;
            }
        }
        out.push(Block {
            start: i + 1,
            len: j - i,
            negative,
        });
        i = j;
    }
    out
}

/// Contracts each maximal run of consecutive values to a single entry and
/// renumbers. Returns the input unchanged when every run is a singleton.
pub fn contract_blocks(perm: &Permutation) -> Permutation {
    let reps: Vec<usize> = blocks(perm).iter().map(|b| perm.at(b.start)).collect();
    let mut sorted = reps.clone();
    sorted.sort_unstable();
    let values = reps
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect();
    Permutation::new(values).expect("renumbered ranks form a permutation")
}

/// Number of contraction rounds needed to reach `(1)`, after moving the top
/// value last; `None` if contraction stalls. This is the depth at the
/// permutation level and bounds the true depth from above.
pub fn permutation_depth(perm: &Permutation) -> Option<usize> {
    let (mut cur, _) = perm.rotate_top_last();
    let mut rounds = 0;
    while cur.len() > 1 {
        let next = contract_blocks(&cur);
        if next.len() == cur.len() {
            return None;
        }
        cur = next;
        rounds += 1;
    }
    Some(rounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn linking_examples() {
        let m = linking_matrix_of_perm(&perm("2134"));
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j {
                    0
                } else if (i, j) == (0, 1) || (i, j) == (1, 0) {
                    -1
                } else {
                    1
                };
                assert_eq!(m[i][j], expect);
            }
        }
        let k = linking_matrix_of_perm(&perm("341256"));
        let neg: Vec<(usize, usize)> = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .filter(|&(i, j)| k[i][j] < 0)
            .map(|(i, j)| (i + 1, j + 1))
            .collect();
        assert_eq!(neg, vec![(1, 3), (1, 4), (2, 3), (2, 4)]);
    }

    #[test]
    fn equivalence_search() {
        let a = linking_matrix_of_perm(&perm("1234"));
        let b = linking_matrix_of_perm(&perm("2134"));
        assert_eq!(linking_equivalent(&a, &b), None);
        let same = linking_equivalent(&b, &b).unwrap();
        assert_eq!(same.perm, vec![1, 2, 3, 4]);
        assert!(!same.mirrored);
    }

    #[test]
    fn cabling_moves() {
        assert_eq!(cable_perm(&perm("1"), 1, 1, 5).unwrap(), perm("123456"));
        assert_eq!(cable_perm(&perm("1"), 1, -1, 1).unwrap(), perm("21"));
        let a = cable_perm(&perm("213"), 1, 1, 1).unwrap();
        assert_eq!(a, perm("3124"));
        let b = cable_perm(&a, 3, 1, 1).unwrap();
        assert_eq!(b, perm("34125"));
        assert_eq!(cable_perm(&b, 5, 1, 1).unwrap(), perm("341256"));
        assert!(cable_perm(&perm("21"), 3, 1, 1).is_err());
        assert_eq!(decable_perm(&perm("341256"), 5, 1).unwrap(), perm("34125"));
        assert_eq!(decable_perm(&perm("3214"), 1, 2).unwrap(), perm("12"));
        assert!(decable_perm(&perm("31425"), 1, 1).is_err());
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contract_blocks(&perm("21435")), perm("123"));
        assert_eq!(contract_blocks(&perm("341256")), perm("213"));
        assert_eq!(contract_blocks(&perm("31425")), perm("31425"));
    }

    #[test]
    fn depths() {
        assert_eq!(permutation_depth(&perm("1")), Some(0));
        assert_eq!(permutation_depth(&perm("123456")), Some(1));
        assert_eq!(permutation_depth(&perm("21435")), Some(2));
        assert_eq!(permutation_depth(&perm("341256")), Some(3));
        assert_eq!(permutation_depth(&perm("312546")), Some(3));
        assert_eq!(permutation_depth(&perm("31425")), None);
        assert_eq!(permutation_depth(&perm("241536")), None);
    }
}
