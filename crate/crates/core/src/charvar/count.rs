use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Subtorus;
use crate::alexander::{alexander_matrix, alexander_poly, ek_minors, link_alexander_poly};
use crate::arrangements::ArrangementSpec;
use crate::error::{Error, Result};
use crate::freebraid::FreeWord;
use crate::intmat::{count_solutions_mod_p, rref_mod_p};
use crate::laurent::{check_prime, torsion_point, LaurentPoly, TorsionEvaluator};

/// `Tors_{p,k}`: the number of points of `V_k` with all coordinates `p`-th roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCount {
    pub p: u64,
    pub k: usize,
    pub count: u128,
}

fn grid_size(p: u64, n: usize) -> Result<u64> {
    p.checked_pow(n as u32)
        .ok_or_else(|| Error::Unsupported(format!("torsion grid {p}^{n} is too large")))
}

/// Number of points of `Ω_p^n` where every polynomial vanishes.
pub fn count_common_zeros(polys: &[LaurentPoly], p: u64, n: usize) -> Result<u128> {
    check_prime(p)?;
    let evals = polys
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| TorsionEvaluator::new(f, p))
        .collect::<Result<Vec<_>>>()?;
    if evals.iter().any(|e| e.nvars() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            found: evals.iter().find(|e| e.nvars() != n).unwrap().nvars(),
        });
    }
    let total = grid_size(p, n)?;
    let count = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let point = torsion_point(p, n, idx);
            evals.iter().all(|e| e.vanishes_at(&point))
        })
        .count();
    Ok(count as u128)
}

/// `Tors_{p,k}` of an arrangement. For `k = 1` and `n ≥ 3` this counts the
/// zeros of `Δ_A`; otherwise the common zeros of the `(n-k)`-minors.
/// Cables support `k = 1` only.
pub fn tors_count(spec: &ArrangementSpec, p: u64, k: usize) -> Result<TorsionCount> {
    check_prime(p)?;
    let n = spec.n()?;
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange {
            what: "ideal index",
            index: k,
            max: n,
        });
    }
    let done = |count| Ok(TorsionCount { p, k, count });
    if k == n {
        return done(0);
    }
    let count = match spec {
        ArrangementSpec::Cable { .. } => {
            if k != 1 || n < 3 {
                return Err(Error::Unsupported(
                    "cables support Tors_{p,1} with at least three planes".into(),
                ));
            }
            count_common_zeros(&[link_alexander_poly(spec)?], p, n)?
        }
        _ if k == 1 && n >= 3 => count_common_zeros(&[alexander_poly(spec, None)?], p, n)?,
        _ => {
            let m = alexander_matrix(spec, None)?;
            count_common_zeros(&ek_minors(&m, k)?, p, n)?
        }
    };
    done(count)
}

/// Checks `torus ⊆ V_k` by substituting a parametrization into every
/// generator of `E_k`. The torus lives in the coordinates of `basis`.
pub fn verify_subtorus(
    spec: &ArrangementSpec,
    torus: &Subtorus,
    k: usize,
    basis: Option<&[FreeWord]>,
) -> Result<bool> {
    Ok(verify_subtorus_detail(spec, torus, k, basis)?
        .iter()
        .all(|&z| z))
}

/// Per-minor results of [`verify_subtorus`]: whether each minor vanishes on the torus.
pub fn verify_subtorus_detail(
    spec: &ArrangementSpec,
    torus: &Subtorus,
    k: usize,
    basis: Option<&[FreeWord]>,
) -> Result<Vec<bool>> {
    let m = alexander_matrix(spec, basis)?;
    if torus.nvars() != m.n() {
        return Err(Error::ArityMismatch {
            expected: m.n(),
            found: torus.nvars(),
        });
    }
    let sub = torus.parametrize()?;
    let minors = ek_minors(&m, k)?;
    minors
        .par_iter()
        .map(|f| Ok(f.substitute(&sub)?.is_zero()))
        .collect()
}

/// Canonical form of a subspace of `F_p^n` as the RREF of its row space.
type Flat = Vec<Vec<u64>>;

fn join(a: &Flat, b: &Flat, p: u64) -> Flat {
    let rows: Vec<Vec<i64>> = a
        .iter()
        .chain(b.iter())
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    rref_mod_p(&rows, p)
}

/// Number of `p`-torsion points on a union of subtori through `1`, by the
/// Möbius function of the intersection lattice of the corresponding
/// subspaces of `F_p^n`.
pub fn subtori_tors(tori: &[Subtorus], p: u64) -> Result<u128> {
    check_prime(p)?;
    if tori.is_empty() {
        return Ok(0);
    }
    let n = tori[0].nvars();
    if let Some(t) = tori.iter().find(|t| t.nvars() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            found: t.nvars(),
        });
    }
    if tori.iter().any(|t| !t.through_one()) {
        return Err(Error::TranslatedSubtorus);
    }
    let pn = (p as u128).pow(n as u32);
    let atoms: Vec<Flat> = tori
        .iter()
        .map(|t| {
            let rows: Vec<Vec<i64>> = t
                .equations()
                .iter()
                .map(|e| e.exps.iter().map(|&x| i64::from(x)).collect())
                .collect();
            rref_mod_p(&rows, p)
        })
        .collect();
    if atoms.iter().any(|a| a.is_empty()) {
        return Ok(pn);
    }
    // Close the atoms under joins (intersections of the solution spaces).
    let mut flats: Vec<Flat> = Vec::new();
    let mut index: HashMap<Flat, usize> = HashMap::new();
    let mut queue: Vec<Flat> = Vec::new();
    for a in atoms.iter() {
        if !index.contains_key(a) {
            index.insert(a.clone(), flats.len());
            flats.push(a.clone());
            queue.push(a.clone());
        }
    }
    while let Some(f) = queue.pop() {
        for a in &atoms {
            let g = join(&f, a, p);
            if !index.contains_key(&g) {
                index.insert(g.clone(), flats.len());
                flats.push(g.clone());
                queue.push(g);
            }
        }
    }
    // Möbius values from the bottom (whole space) in order of rank.
    let mut order: Vec<usize> = (0..flats.len()).collect();
    order.sort_by_key(|&i| flats[i].len());
    let contains = |big: &Flat, small: &Flat| join(big, small, p).len() == big.len();
    let mut mu: Vec<i128> = vec![0; flats.len()];
    let mut total: i128 = 0;
    for (pos, &x) in order.iter().enumerate() {
        let mut m: i128 = -1;
        for &y in &order[..pos] {
            if flats[y].len() < flats[x].len() && contains(&flats[x], &flats[y]) {
                m -= mu[y];
            }
        }
        mu[x] = m;
        total -= m * (p as i128).pow((n - flats[x].len()) as u32);
    }
    Ok(total as u128)
}

/// Number of `p`-torsion points on a union of possibly translated subtori,
/// by inclusion–exclusion over their intersections.
pub fn union_tors(tori: &[Subtorus], p: u64) -> Result<u128> {
    check_prime(p)?;
    if tori.is_empty() {
        return Ok(0);
    }
    if tori.len() > 24 {
        return Err(Error::Unsupported(
            "too many subtori for inclusion–exclusion".into(),
        ));
    }
    let n = tori[0].nvars();
    let mut total: i128 = 0;
    for mask in 1u32..(1 << tori.len()) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, t) in tori.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            for e in t.equations() {
                a.push(e.exps.iter().map(|&x| i64::from(x)).collect::<Vec<_>>());
                b.push(if e.sign == 1 { 0 } else { 1 });
            }
        }
        // ζ^s = -1 needs p = 2; for odd p a translated equation has no torsion solutions.
        let count = if p != 2 && b.contains(&1) {
            0
        } else {
            count_solutions_mod_p(&a, &b, p, n)
        };
        if mask.count_ones() % 2 == 1 {
            total += count as i128;
        } else {
            total -= count as i128;
        }
    }
    Ok(total as u128)
}

/// Direct enumeration of `Ω_p^n` against a union of subtori.
pub fn union_tors_bruteforce(tori: &[Subtorus], p: u64) -> Result<u128> {
    check_prime(p)?;
    let Some(first) = tori.first() else {
        return Ok(0);
    };
    let n = first.nvars();
    let total = grid_size(p, n)?;
    Ok((0..total)
        .into_par_iter()
        .filter(|&idx| {
            let point = torsion_point(p, n, idx);
            tori.iter().any(|t| t.contains_torsion_point(p, &point))
        })
        .count() as u128)
}

/// `Tors_{2,1} = 2^{n-1} − (1+(−1)^n)/2 + δ(A) + Σ_{B∈Γ(A)} δ(B)`, for `n ≥ 2`.
pub fn tors2_recursion(n: usize, delta: u8, gamma_deltas: &[u8]) -> Result<u128> {
    if n < 2 {
        return Err(Error::Unsupported(
            "the recursion needs at least two planes".into(),
        ));
    }
    let even = u128::from(n % 2 == 0);
    let gamma: u128 = gamma_deltas.iter().map(|&d| u128::from(d)).sum();
    Ok((1u128 << (n - 1)) - even + u128::from(delta) + gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn horizontal(s: &str) -> ArrangementSpec {
        ArrangementSpec::Horizontal(Permutation::parse(s).unwrap())
    }

    #[test]
    fn small_counts() {
        assert_eq!(tors_count(&horizontal("1"), 2, 1).unwrap().count, 0);
        assert_eq!(tors_count(&horizontal("12"), 2, 1).unwrap().count, 1);
        assert_eq!(tors_count(&horizontal("12"), 3, 1).unwrap().count, 1);
        assert_eq!(tors_count(&horizontal("123"), 3, 1).unwrap().count, 9);
        assert_eq!(tors_count(&horizontal("2134"), 3, 4).unwrap().count, 0);
        assert!(matches!(
            tors_count(&horizontal("123"), 4, 1),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn single_hyperplane() {
        let t = Subtorus::parse("t1*t2*t3=1", 3).unwrap();
        assert_eq!(subtori_tors(std::slice::from_ref(&t), 3).unwrap(), 9);
        assert_eq!(union_tors(std::slice::from_ref(&t), 3).unwrap(), 9);
        assert_eq!(union_tors_bruteforce(&[t], 3).unwrap(), 9);
    }

    #[test]
    fn translated_input_rejected() {
        let t = Subtorus::parse("t1=-1", 2).unwrap();
        assert!(matches!(
            subtori_tors(std::slice::from_ref(&t), 2),
            Err(Error::TranslatedSubtorus)
        ));
        assert_eq!(union_tors(std::slice::from_ref(&t), 2).unwrap(), 2);
        assert_eq!(union_tors(&[t], 3).unwrap(), 0);
    }

    #[test]
    fn recursion_values() {
        assert_eq!(tors2_recursion(5, 0, &[]).unwrap(), 16);
        assert_eq!(tors2_recursion(6, 1, &[0]).unwrap(), 32);
        assert_eq!(tors2_recursion(6, 0, &[]).unwrap(), 31);
        assert!(tors2_recursion(1, 0, &[]).is_err());
    }
}
