//! Checks shared by the property suite and the acceptance run. Each check
//! returns `Err(description)` on a violation.

#![allow(dead_code)]

use plane4_core::alexander::{
    alexander_matrix, alexander_poly, gassner, link_alexander_poly, link_poly_from_braid,
    single_var_poly,
};
use plane4_core::arrangements::{
    cable_perm, decable_perm, linking_matrix_of_perm, ArrangementSpec,
};
use plane4_core::charvar::{
    count_common_zeros, subtori_tors, torres_specialize, tors_count, union_tors,
    union_tors_bruteforce, Subtorus, TorusEquation,
};
use plane4_core::freebraid::full_braid;
use plane4_core::laurent::combinations;
use plane4_core::{FreeWord, LaurentPoly, Permutation, PolyMatrix, PureBraidWord};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Σ_j ∂w/∂x_j · (t_j − 1) = t^{ab(w)} − 1`.
pub fn fox_identity(rank: usize, letters: &[i32]) -> Check {
    let w = FreeWord::from_signed(rank, letters).map_err(|e| e.to_string())?;
    let mut lhs = LaurentPoly::zero(rank);
    for j in 1..=rank {
        let d = w.fox_derivative_ab(j).map_err(|e| e.to_string())?;
        lhs += &(&d * &(&LaurentPoly::var(rank, j) - &LaurentPoly::one(rank)));
    }
    let rhs = &LaurentPoly::monomial(w.abelianize(), 1) - &LaurentPoly::one(rank);
    ensure(lhs == rhs, || format!("Fox identity fails for {w}"))
}

/// `Θ(pq) = Θ(p)Θ(q)`, `Θ(p)|_{t=1} = id` and `det Θ(p)` is a unit.
pub fn gassner_law(strands: usize, p: &[(usize, usize, i64)], q: &[(usize, usize, i64)]) -> Check {
    let p = PureBraidWord::from_triples(strands, p).map_err(|e| e.to_string())?;
    let q = PureBraidWord::from_triples(strands, q).map_err(|e| e.to_string())?;
    let gp = gassner(&p, None).map_err(|e| e.to_string())?;
    let gq = gassner(&q, None).map_err(|e| e.to_string())?;
    let gpq = gassner(&p.concat(&q).unwrap(), None).map_err(|e| e.to_string())?;
    ensure(gp.mul(&gq).unwrap() == gpq, || {
        format!("Θ({p}·{q}) ≠ Θ({p})Θ({q})")
    })?;
    let ones = vec![1i8; strands];
    let at_one = gp
        .matrix()
        .map(|f| LaurentPoly::constant(strands, f.eval_signs(&ones)));
    ensure(at_one == PolyMatrix::identity(strands, strands), || {
        format!("Θ({p}) at t = 1 is not the identity")
    })?;
    ensure(gp.matrix().det().unwrap().is_unit(), || {
        format!("det Θ({p}) is not a unit")
    })
}

/// `M·(t_1 − 1, …, t_n − 1)ᵀ = 0` and `(t_n − 1) | det(t_n·id − Θ(ξ²))`.
pub fn row_identity_and_divisibility(spec: &ArrangementSpec) -> Check {
    let m = alexander_matrix(spec, None).map_err(|e| e.to_string())?;
    let n = m.n();
    for i in 0..m.matrix.rows() {
        let mut acc = LaurentPoly::zero(n);
        for j in 0..n {
            acc += &(m.matrix.get(i, j) * &(&LaurentPoly::var(n, j + 1) - &LaurentPoly::one(n)));
        }
        ensure(acc.is_zero(), || {
            format!("row {} of M({spec}) fails M·d = 0", i + 1)
        })?;
    }
    if n >= 3 {
        alexander_poly(spec, None).map_err(|e| format!("{spec}: {e}"))?;
    }
    Ok(())
}

/// Applies Nielsen moves `b_i ← b_i·b_j^{±1}` (or on the left) to the `x`-basis.
pub fn random_basis<R: Rng>(rng: &mut R, rank: usize, moves: usize) -> Vec<FreeWord> {
    let mut basis: Vec<FreeWord> = (1..=rank).map(|i| FreeWord::generator(rank, i)).collect();
    if rank < 2 {
        return basis;
    }
    for _ in 0..moves {
        let i = rng.gen_range(0..rank);
        let mut j = rng.gen_range(0..rank - 1);
        if j >= i {
            j += 1;
        }
        let other = if rng.gen_bool(0.5) {
            basis[j].clone()
        } else {
            basis[j].inverse()
        };
        basis[i] = if rng.gen_bool(0.5) {
            basis[i].mul(&other)
        } else {
            other.mul(&basis[i])
        };
    }
    basis
}

/// Torsion counts of `V_1` and `V_2` do not depend on the basis of `F_{n-1}`.
pub fn basis_invariance(spec: &ArrangementSpec, basis: &[FreeWord]) -> Check {
    let n = spec.n().map_err(|e| e.to_string())?;
    for p in [2, 3] {
        let base = tors_count(spec, p, 1).map_err(|e| e.to_string())?.count;
        let delta = alexander_poly(spec, Some(basis)).map_err(|e| e.to_string())?;
        let moved = count_common_zeros(&[delta], p, n).map_err(|e| e.to_string())?;
        ensure(base == moved, || {
            format!("Tors_{{{p},1}}({spec}) changes under a basis change: {base} vs {moved}")
        })?;
        if n >= 4 {
            let base2 = tors_count(spec, p, 2).map_err(|e| e.to_string())?.count;
            let m = alexander_matrix(spec, Some(basis)).map_err(|e| e.to_string())?;
            let minors = m.matrix.minors(n - 2);
            let moved2 = count_common_zeros(&minors, p, n).map_err(|e| e.to_string())?;
            ensure(base2 == moved2, || {
                format!("Tors_{{{p},2}}({spec}) changes under a basis change")
            })?;
        }
    }
    Ok(())
}

/// Invariants of `ξ` and `δ^{-1}ξδ` agree for a pure braid `δ`.
pub fn conjugation_invariance(
    n: usize,
    xi: &[(usize, usize, i64)],
    delta: &[(usize, usize, i64)],
) -> Check {
    let strands = n - 1;
    let xi = PureBraidWord::from_triples(strands, xi).map_err(|e| e.to_string())?;
    let d = PureBraidWord::from_triples(strands, delta).map_err(|e| e.to_string())?;
    let conj = d.inverse().concat(&xi).unwrap().concat(&d).unwrap();
    let a = ArrangementSpec::XiWord { n, xi: xi.clone() };
    let b = ArrangementSpec::XiWord { n, xi: conj };
    let fa = single_var_poly(&a).map_err(|e| e.to_string())?;
    let fb = single_var_poly(&b).map_err(|e| e.to_string())?;
    ensure(fa == fb, || {
        format!("single-variable polynomial changes under conjugation of {xi}")
    })?;
    let la = link_alexander_poly(&a).map_err(|e| e.to_string())?;
    let lb = link_alexander_poly(&b).map_err(|e| e.to_string())?;
    ensure(la.term_count() == lb.term_count(), || {
        format!("term count of Δ_L changes under conjugation of {xi}")
    })?;
    for p in [2, 3] {
        for k in 1..n {
            let ta = tors_count(&a, p, k).map_err(|e| e.to_string())?.count;
            let tb = tors_count(&b, p, k).map_err(|e| e.to_string())?.count;
            ensure(ta == tb, || {
                format!("Tors_{{{p},{k}}} changes under conjugation of {xi}")
            })?;
        }
    }
    Ok(())
}

/// Builds a subtorus through `1` from exponent rows, if they are independent.
pub fn torus_from_rows(n: usize, rows: &[Vec<i32>]) -> Option<Subtorus> {
    let eqs = rows
        .iter()
        .map(|r| TorusEquation {
            exps: r.clone(),
            sign: 1,
        })
        .collect();
    Subtorus::new(n, eqs).ok()
}

/// The Möbius count, inclusion–exclusion and direct enumeration agree.
pub fn mobius_vs_bruteforce(tori: &[Subtorus], p: u64) -> Check {
    let mobius = subtori_tors(tori, p).map_err(|e| e.to_string())?;
    let brute = union_tors_bruteforce(tori, p).map_err(|e| e.to_string())?;
    let incl = union_tors(tori, p).map_err(|e| e.to_string())?;
    ensure(mobius == brute && incl == brute, || {
        let shown: Vec<String> = tori.iter().map(|t| t.to_string()).collect();
        format!(
            "p = {p}, tori [{}]: Möbius {mobius}, inclusion–exclusion {incl}, brute force {brute}",
            shown.join("; ")
        )
    })
}

/// Removes the plane at position `i` (1-based) and renumbers.
pub fn delete_position(perm: &Permutation, i: usize) -> Permutation {
    let removed = perm.at(i);
    let values = perm
        .values()
        .iter()
        .enumerate()
        .filter(|(pos, _)| pos + 1 != i)
        .map(|(_, &v)| if v > removed { v - 1 } else { v })
        .collect();
    Permutation::new(values).unwrap()
}

/// Deleting component `k` from `Δ_L` via the Torres formula gives the link
/// polynomial of the arrangement without plane `k`.
pub fn torres_sublink(perm: &Permutation, k: usize) -> Check {
    let spec = ArrangementSpec::Horizontal(perm.clone());
    let full = link_alexander_poly(&spec).map_err(|e| e.to_string())?;
    let lk: Vec<i64> = linking_matrix_of_perm(perm)[k - 1]
        .iter()
        .map(|&x| i64::from(x))
        .collect();
    let torres = torres_specialize(&full, k, &lk).map_err(|e| format!("{perm}, k = {k}: {e}"))?;
    let sub = ArrangementSpec::Horizontal(delete_position(perm, k));
    let direct = link_alexander_poly(&sub).map_err(|e| e.to_string())?;
    ensure(torres == direct, || {
        format!("Torres deletion of {k} from {perm}: {torres} vs {direct}")
    })
}

/// The combed-braid link polynomial equals the one read off the closed
/// full braid, for every choice of deleted column.
pub fn braid_route(perm: &Permutation) -> Check {
    let direct = link_alexander_poly(&ArrangementSpec::Horizontal(perm.clone()))
        .map_err(|e| e.to_string())?;
    let beta = full_braid(perm);
    for j in 1..=perm.len() {
        let closed = link_poly_from_braid(&beta, j).map_err(|e| e.to_string())?;
        ensure(closed == direct, || {
            format!("{perm}: combed route {direct} vs closed braid (column {j}) {closed}")
        })?;
    }
    Ok(())
}

/// `Tors_{p,k} ≥ Tors_{p,k+1}`, and `2^{n-1} − 1 ≤ Tors_{2,1} ≤ 2^n` for `n ≥ 2`.
pub fn monotone_and_bounds(spec: &ArrangementSpec) -> Check {
    let n = spec.n().map_err(|e| e.to_string())?;
    for p in [2, 3] {
        let counts: Vec<u128> = (1..=n)
            .map(|k| tors_count(spec, p, k).map(|c| c.count))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(counts.windows(2).all(|w| w[0] >= w[1]), || {
            format!("Tors_{{{p},k}}({spec}) not monotone: {counts:?}")
        })?;
        if p == 2 && n >= 2 {
            let t = counts[0];
            ensure((1u128 << (n - 1)) - 1 <= t && t <= 1u128 << n, || {
                format!("Tors_{{2,1}}({spec}) = {t} outside [2^{{n-1}}-1, 2^n]")
            })?;
        }
    }
    Ok(())
}

/// Cabling followed by decabling is the identity.
pub fn decabling(perm: &Permutation, k: usize, sign: i8, r: usize) -> Check {
    let c = cable_perm(perm, k, sign, r).map_err(|e| e.to_string())?;
    let back = decable_perm(&c, k, r).map_err(|e| e.to_string())?;
    ensure(&back == perm, || {
        format!("decabling {c} gives {back}, not {perm}")
    })
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

pub fn random_triples<R: Rng>(rng: &mut R, strands: usize, len: usize) -> Vec<(usize, usize, i64)> {
    let pairs = combinations(strands, 2);
    (0..len)
        .map(|_| {
            let p = &pairs[rng.gen_range(0..pairs.len())];
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            (p[0] + 1, p[1] + 1, e)
        })
        .collect()
}
