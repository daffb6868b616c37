//! Small dense integer-matrix helpers: determinants, unimodular inverses,
//! column Hermite reduction and linear algebra over the prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse of an integer matrix with determinant ±1, via the adjugate.
pub fn inverse_unimodular(rows: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = rows.len();
    let d = det(rows);
    if d.magnitude() != &1u32.into() {
        return None;
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let mut cof = det(&minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv[j][i] = (cof * &d).to_i64()?;
        }
    }
    Some(inv)
}

/// Column Hermite reduction: returns `(l, v)` with `a · v = [l | 0]`, `v`
/// unimodular and `l` lower triangular with nonnegative diagonal, or `None`
/// if the rows of `a` are linearly dependent.
pub fn column_hermite(a: &[Vec<i64>], ncols: usize) -> Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let m = a.len();
    let mut w: Vec<Vec<i64>> = a.to_vec();
    let mut v: Vec<Vec<i64>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| i64::from(i == j)).collect())
        .collect();
    // Column operation on both w and v: (c_i, c_j) ← (x c_i + y c_j, u c_i + z c_j).
    let colop = |mat: &mut Vec<Vec<i64>>, i: usize, j: usize, x: i64, y: i64, u: i64, z: i64| {
        for row in mat.iter_mut() {
            let (ci, cj) = (row[i], row[j]);
            row[i] = x * ci + y * cj;
            row[j] = u * ci + z * cj;
        }
    };
    for r in 0..m {
        if r >= ncols {
            return None;
        }
        for c in r + 1..ncols {
            let (a0, b0) = (w[r][r], w[r][c]);
            if b0 == 0 {
                continue;
            }
            let e = a0.extended_gcd(&b0);
            let g = e.gcd;
            // new_r = x a + y b = g, new_c = -(b/g) a + (a/g) b = 0; determinant 1.
            let (x, y, u, z) = (e.x, e.y, -(b0 / g), a0 / g);
            colop(&mut w, r, c, x, y, u, z);
            colop(&mut v, r, c, x, y, u, z);
        }
        if w[r][r] == 0 {
            return None;
        }
        if w[r][r] < 0 {
            for row in w.iter_mut() {
                row[r] = -row[r];
            }
            for row in v.iter_mut() {
                row[r] = -row[r];
            }
        }
    }
    let l = w.iter().map(|row| row[..m].to_vec()).collect();
    Some((l, v))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

/// Reduced row echelon form over `F_p` of the given rows (zero rows dropped).
pub fn rref_mod_p(rows: &[Vec<i64>], p: u64) -> Vec<Vec<u64>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(sel) = (pivot_row..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(pivot_row, sel);
        let inv = inv_mod(a[pivot_row][col], p);
        for x in a[pivot_row].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != pivot_row && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..ncols {
                    a[i][j] = (a[i][j] + p * p - f * a[pivot_row][j]) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == a.len() {
            break;
        }
    }
    a.truncate(pivot_row);
    a
}

/// Solves `a · x ≡ b (mod p)`; returns the number of solutions in `F_p^n`
/// (`p^{n - rank}` when consistent, zero otherwise).
pub fn count_solutions_mod_p(a: &[Vec<i64>], b: &[i64], p: u64, n: usize) -> u128 {
    let augmented: Vec<Vec<i64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    if augmented.is_empty() {
        return (p as u128).pow(n as u32);
    }
    let r = rref_mod_p(&augmented, p);
    // An echelon row whose only nonzero entry is in the last column is 0 = 1.
    if r.iter().any(|row| row[..n].iter().all(|&x| x == 0)) {
        return 0;
    }
    (p as u128).pow((n - r.len()) as u32)
}
