use num_integer::Integer;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, MonomialSubstitution};

/// Variable renaming that moves `component` (1-based) to the last slot.
fn move_last(n: usize, component: usize) -> Vec<usize> {
    (1..=n)
        .map(|i| match i.cmp(&component) {
            std::cmp::Ordering::Less => i,
            std::cmp::Ordering::Equal => n,
            std::cmp::Ordering::Greater => i - 1,
        })
        .collect()
}

fn inverse(target: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; target.len()];
    for (i, &t) in target.iter().enumerate() {
        inv[t - 1] = i + 1;
    }
    inv
}

fn check_component(n: usize, component: usize, linking: &[i64]) -> Result<()> {
    if component == 0 || component > n {
        return Err(Error::IndexOutOfRange {
            what: "component",
            index: component,
            max: n,
        });
    }
    if linking.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: linking.len(),
        });
    }
    Ok(())
}

/// `T = ∏_{i≠k} t_i^{l_i}` in the reordered coordinates (component last).
fn linking_monomial(n_out: usize, component: usize, linking: &[i64]) -> Result<Vec<i32>> {
    let mut exps = vec![0i32; n_out];
    let mut slot = 0;
    for (i, &l) in linking.iter().enumerate() {
        if i + 1 == component {
            continue;
        }
        exps[slot] =
            i32::try_from(l).map_err(|_| Error::Unsupported("linking number too large".into()))?;
        slot += 1;
    }
    Ok(exps)
}

/// Link polynomial after adding an `(a, b)` cable of `component`:
/// with the component moved last,
/// `Δ' = (T^a t_n^b t_{n+1}^b − 1)·Δ(t_1, …, t_{n-1}, t_n^a t_{n+1})`, where
/// `T = ∏ t_i^{l_i}` over the other components. The cabled component keeps
/// its index and the new one becomes `n + 1`. `linking[i-1]` is the linking
/// number of the component with component `i` (its own entry is ignored).
pub fn cable_link_poly(
    linkpoly: &LaurentPoly,
    component: usize,
    a: i64,
    b: i64,
    linking: &[i64],
) -> Result<LaurentPoly> {
    let n = linkpoly.nvars();
    check_component(n, component, linking)?;
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let small = |x: i64| {
        i32::try_from(x).map_err(|_| Error::Unsupported("cable exponent too large".into()))
    };
    let (a32, b32) = (small(a)?, small(b)?);
    if n == 1 {
        if a != 1 {
            return Err(Error::Unsupported("cables of a knot need a = 1".into()));
        }
        let sub = MonomialSubstitution::from_matrix(2, vec![vec![1, 1]])?;
        return linkpoly.substitute(&sub)?.normalize_unit();
    }
    let target = move_last(n, component);
    let moved = linkpoly.permute_vars(&target);
    let mut rows: Vec<Vec<i32>> = (0..n)
        .map(|i| (0..=n).map(|j| i32::from(i == j)).collect())
        .collect();
    rows[n - 1][n - 1] = a32;
    rows[n - 1][n] = 1;
    let sub = MonomialSubstitution::from_matrix(n + 1, rows)?;
    let mut factor_exps: Vec<i32> = linking_monomial(n - 1, component, linking)?
        .iter()
        .map(|&l| l * a32)
        .collect();
    factor_exps.push(b32);
    factor_exps.push(b32);
    let factor = &LaurentPoly::monomial(factor_exps, 1) - &LaurentPoly::one(n + 1);
    let cabled = &factor * &moved.substitute(&sub)?;
    let mut back = inverse(&target);
    back.push(n + 1);
    cabled.permute_vars(&back).normalize_unit()
}

/// Link polynomial of the sublink without `component`:
/// `Δ(t_1, …, t_{n-1}, 1) / (T − 1)` with the component moved last.
/// Needs at least three components.
pub fn torres_specialize(
    linkpoly: &LaurentPoly,
    component: usize,
    linking: &[i64],
) -> Result<LaurentPoly> {
    let n = linkpoly.nvars();
    check_component(n, component, linking)?;
    if n < 3 {
        return Err(Error::Unsupported(
            "deleting a component needs at least three components".into(),
        ));
    }
    let moved = linkpoly.permute_vars(&move_last(n, component));
    let rows: Vec<Vec<i32>> = (0..n)
        .map(|i| (0..n - 1).map(|j| i32::from(i == j)).collect())
        .collect();
    let specialized = moved.substitute(&MonomialSubstitution::from_matrix(n - 1, rows)?)?;
    let t = LaurentPoly::monomial(linking_monomial(n - 1, component, linking)?, 1);
    let divisor = (&t - &LaurentPoly::one(n - 1)).normalize_unit()?;
    specialized.exact_div(&divisor)?.normalize_unit()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap().normalize_unit().unwrap()
    }

    #[test]
    fn hopf_to_three_lines() {
        let c = cable_link_poly(&LaurentPoly::one(2), 2, 1, 1, &[1, 0]).unwrap();
        assert_eq!(c, poly("t1*t2*t3-1", 3));
    }

    #[test]
    fn iterated_positive_cables_give_complex_arrangements() {
        let mut f = LaurentPoly::one(1);
        let mut n = 1;
        while n < 6 {
            let linking: Vec<i64> = (0..n).map(|i| i64::from(i + 1 != n)).collect();
            f = cable_link_poly(&f, n, 1, 1, &linking).unwrap();
            n += 1;
            if n >= 2 {
                let prod: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
                let expect = poly(&format!("({}-1)^{}", prod.join("*"), n.max(2) - 2), n);
                assert_eq!(f, expect, "n = {n}");
            }
        }
    }

    #[test]
    fn coprime_required() {
        assert!(matches!(
            cable_link_poly(&LaurentPoly::one(2), 1, 2, 4, &[0, 1]),
            Err(Error::NotCoprime { a: 2, b: 4 })
        ));
    }

    #[test]
    fn torres_on_complex() {
        let f = poly("(t1*t2*t3*t4-1)^2", 4);
        for k in 1..=4 {
            assert_eq!(
                torres_specialize(&f, k, &[1, 1, 1, 1]).unwrap(),
                poly("t1*t2*t3-1", 3)
            );
        }
        let g = poly("t1*t2*t3-1", 3);
        assert!(torres_specialize(&g, 2, &[1, 1, 1]).unwrap().is_unit());
    }
}
