use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, MonomialSubstitution};
use crate::error::{Error, Result};

/// Dense matrix of Laurent polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![LaurentPoly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, n, nvars);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ArityMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            for e in row {
                if e.nvars() != nvars {
                    return Err(Error::ArityMismatch {
                        expected: nvars,
                        found: e.nvars(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            rows: nrows,
            cols: ncols,
            nvars,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly) {
        assert_eq!(value.nvars(), self.nvars);
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn map<F: Fn(&LaurentPoly) -> LaurentPoly>(&self, f: F) -> Self {
        let entries: Vec<LaurentPoly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, |e| e.nvars());
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            entries,
        }
    }

    pub fn substitute(&self, sub: &MonomialSubstitution) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.substitute(sub))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: sub.nvars_out(),
            entries,
        })
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = PolyMatrix::zero(self.rows, rhs.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = LaurentPoly::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix with the given 0-based row and column deleted.
    pub fn delete(&self, row: Option<usize>, col: Option<usize>) -> PolyMatrix {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|&i| Some(i) != row).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|&j| Some(j) != col).collect();
        let entries = keep_rows
            .iter()
            .flat_map(|&i| keep_cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            rows: keep_rows.len(),
            cols: keep_cols.len(),
            nvars: self.nvars,
            entries,
        }
    }

    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::ArityMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let all = self.minors_for_rows(&rows);
        Ok(all
            .into_iter()
            .next()
            .unwrap_or_else(|| LaurentPoly::one(self.nvars)))
    }

    /// All `m × m` minors, ordered by row subset then column subset, each in
    /// lexicographic order. `m = 0` yields the single empty minor `1`.
    pub fn minors(&self, m: usize) -> Vec<LaurentPoly> {
        if m == 0 {
            return vec![LaurentPoly::one(self.nvars)];
        }
        let row_sets = combinations(self.rows, m);
        let per_rows: Vec<Vec<LaurentPoly>> = row_sets
            .par_iter()
            .map(|rows| self.minors_for_rows(rows))
            .collect();
        per_rows.into_iter().flatten().collect()
    }

    /// Minors on the given rows against every column subset of matching size.
    ///
    /// Laplace expansion along the last chosen row, memoized over column
    /// subsets: `D[S] = Σ_{c∈S} (-1)^{|S|-1+pos(c,S)} a_{r,c} D[S∖c]`.
    fn minors_for_rows(&self, rows: &[usize]) -> Vec<LaurentPoly> {
        let m = rows.len();
        assert!(self.cols <= 24, "too many columns for subset expansion");
        let size = 1usize << self.cols;
        let mut dp: Vec<Option<LaurentPoly>> = vec![None; size];
        dp[0] = Some(LaurentPoly::one(self.nvars));
        let mut layer = vec![0usize];
        for (depth, &r) in rows.iter().enumerate() {
            let mut next = Vec::new();
            for mask in combinations(self.cols, depth + 1)
                .iter()
                .map(|c| to_mask(c))
            {
                let mut acc = LaurentPoly::zero(self.nvars);
                let mut pos = 0;
                for c in 0..self.cols {
                    if mask & (1 << c) == 0 {
                        continue;
                    }
                    let a = self.get(r, c);
                    if !a.is_zero() {
                        if let Some(sub) = &dp[mask & !(1 << c)] {
                            if !sub.is_zero() {
                                let term = a * sub;
                                if (depth + pos) % 2 == 0 {
                                    acc += &term;
                                } else {
                                    acc -= &term;
                                }
                            }
                        }
                    }
                    pos += 1;
                }
                dp[mask] = Some(acc);
                next.push(mask);
            }
            for old in layer {
                dp[old] = None;
            }
            layer = next;
        }
        combinations(self.cols, m)
            .iter()
            .map(|c| dp[to_mask(c)].clone().expect("computed"))
            .collect()
    }
}

fn to_mask(c: &[usize]) -> usize {
    c.iter().fold(0, |m, &i| m | (1 << i))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[ {} ]", cells.join(" | "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}\n{}", self.rows, self.cols, self)
    }
}
