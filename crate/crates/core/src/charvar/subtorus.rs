use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat;
use crate::laurent::{LaurentPoly, MonomialSubstitution, SignedMonomial};

/// One equation `t^exps = sign`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusEquation {
    pub exps: Vec<i32>,
    pub sign: i8,
}

/// A possibly translated subtorus of `(C^*)^n`, cut out by independent
/// monomial equations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubtorusRepr", into = "SubtorusRepr")]
pub struct Subtorus {
    nvars: usize,
    equations: Vec<TorusEquation>,
}

#[derive(Serialize, Deserialize)]
struct SubtorusRepr {
    nvars: usize,
    equations: Vec<TorusEquation>,
}

impl TryFrom<SubtorusRepr> for Subtorus {
    type Error = Error;
    fn try_from(r: SubtorusRepr) -> Result<Self> {
        Subtorus::new(r.nvars, r.equations)
    }
}

impl From<Subtorus> for SubtorusRepr {
    fn from(t: Subtorus) -> Self {
        SubtorusRepr {
            nvars: t.nvars,
            equations: t.equations,
        }
    }
}

impl Subtorus {
    pub fn new(nvars: usize, equations: Vec<TorusEquation>) -> Result<Self> {
        for eq in &equations {
            if eq.exps.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: eq.exps.len(),
                });
            }
            if eq.sign != 1 && eq.sign != -1 {
                return Err(Error::Unsupported(format!("sign {} is not ±1", eq.sign)));
            }
        }
        let rows: Vec<Vec<i64>> = equations
            .iter()
            .map(|e| e.exps.iter().map(|&x| i64::from(x)).collect())
            .collect();
        if !equations.is_empty() && intmat::column_hermite(&rows, nvars).is_none() {
            return Err(Error::Unsupported(
                "subtorus equations are not independent".into(),
            ));
        }
        Ok(Subtorus { nvars, equations })
    }

    /// `T(ones) ∩ T̄(minus_ones)`: `t_i = 1` for `i ∈ ones`, `t_i = -1` for
    /// `i ∈ minus_ones` (1-based, disjoint).
    pub fn coordinate(nvars: usize, ones: &[usize], minus_ones: &[usize]) -> Self {
        let unit = |i: usize, sign: i8| TorusEquation {
            exps: (1..=nvars).map(|k| i32::from(k == i)).collect(),
            sign,
        };
        let equations = ones
            .iter()
            .map(|&i| unit(i, 1))
            .chain(minus_ones.iter().map(|&i| unit(i, -1)))
            .collect();
        Subtorus { nvars, equations }
    }

    /// The whole torus.
    pub fn full(nvars: usize) -> Self {
        Subtorus {
            nvars,
            equations: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> &[TorusEquation] {
        &self.equations
    }

    pub fn codim(&self) -> usize {
        self.equations.len()
    }

    /// True when every equation has right-hand side `1`.
    pub fn through_one(&self) -> bool {
        self.equations.iter().all(|e| e.sign == 1)
    }

    /// Membership of the torsion point `t_i = ζ_p^{point[i]}`.
    pub fn contains_torsion_point(&self, p: u64, point: &[u64]) -> bool {
        self.equations.iter().all(|e| {
            let s = e
                .exps
                .iter()
                .zip(point)
                .map(|(&a, &x)| (i64::from(a)).rem_euclid(p as i64) as u64 * x)
                .sum::<u64>()
                % p;
            // ζ_p^s = -1 is only possible for p = 2, s = 1.
            match e.sign {
                1 => s == 0,
                _ => p == 2 && s == 1,
            }
        })
    }

    /// A monomial map `(C^*)^{n-m} → (C^*)^n` onto the subtorus, with signs
    /// for the translation. Fails when the equations cut out a disconnected set.
    pub fn parametrize(&self) -> Result<MonomialSubstitution> {
        let n = self.nvars;
        let m = self.equations.len();
        if m == 0 {
            return Ok(MonomialSubstitution::identity(n));
        }
        let rows: Vec<Vec<i64>> = self
            .equations
            .iter()
            .map(|e| e.exps.iter().map(|&x| i64::from(x)).collect())
            .collect();
        let (l, v) = intmat::column_hermite(&rows, n)
            .ok_or_else(|| Error::NotParametrizable(self.to_string()))?;
        if (0..m).any(|i| l[i][i] != 1) {
            return Err(Error::NotParametrizable(self.to_string()));
        }
        // With t = u^V the equations read u^L = ε on the first m coordinates;
        // L is unitriangular, so the fixed coordinates are signs.
        let mut bits = vec![0i64; m];
        for i in 0..m {
            let target = i64::from(self.equations[i].sign == -1);
            let acc: i64 = (0..i).map(|j| l[i][j] * bits[j]).sum();
            bits[i] = (target - acc).rem_euclid(2);
        }
        let images = (0..n)
            .map(|i| {
                let parity: i64 = (0..m).map(|j| v[i][j] * bits[j]).sum();
                let v_row = &v[i];
                SignedMonomial {
                    sign: if parity.rem_euclid(2) == 1 { -1 } else { 1 },
                    exps: (m..n).map(|j| v_row[j] as i32).collect(),
                }
            })
            .collect();
        MonomialSubstitution::new(n - m, images)
    }

    /// Parses `t4=1 & t2=-1` or `t6=t4^2*t3^-2`; each side is `±1` or a signed monomial.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let mut equations = Vec::new();
        let mut offset = 0;
        for part in text.split('&') {
            let (lhs, rhs) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(offset, "expected `=` in equation"))?;
            let side = |s: &str, at: usize| -> Result<(Vec<i32>, i8)> {
                let p = LaurentPoly::parse(s, nvars).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::parse(at + pos, msg),
                    other => other,
                })?;
                let mut terms = p.terms();
                match (terms.next(), terms.next()) {
                    (Some((e, c)), None) if c.abs().is_one() => {
                        Ok((e.clone(), if c == &BigInt::one() { 1 } else { -1 }))
                    }
                    _ => Err(Error::parse(at, format!("{:?} is not ±monomial", s.trim()))),
                }
            };
            let (le, ls) = side(lhs, offset)?;
            let (re, rs) = side(rhs, offset + lhs.len() + 1)?;
            equations.push(TorusEquation {
                exps: le.iter().zip(&re).map(|(a, b)| a - b).collect(),
                sign: ls * rs,
            });
            offset += part.len() + 1;
        }
        Subtorus::new(nvars, equations)
    }
}

fn monomial_text(exps: &[(usize, i32)]) -> String {
    exps.iter()
        .map(|&(i, e)| {
            if e == 1 {
                format!("t{i}")
            } else {
                format!("t{i}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for TorusEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<(usize, i32)> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i + 1, e))
            .collect();
        let sign = if self.sign < 0 { "-" } else { "" };
        match nz.as_slice() {
            [] => write!(f, "1={sign}1"),
            [_] => write!(f, "{}={sign}1", monomial_text(&nz)),
            _ => {
                // Highest variable on the left with a positive exponent.
                let (top, e) = *nz.last().unwrap();
                let flip = if e < 0 { -1 } else { 1 };
                let rest: Vec<(usize, i32)> = nz[..nz.len() - 1]
                    .iter()
                    .rev()
                    .map(|&(i, x)| (i, -flip * x))
                    .collect();
                write!(
                    f,
                    "{}={sign}{}",
                    monomial_text(&[(top, flip * e)]),
                    monomial_text(&rest)
                )
            }
        }
    }
}

impl fmt::Display for Subtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.equations.is_empty() {
            return write!(f, "(full torus)");
        }
        let parts: Vec<String> = self.equations.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" & "))
    }
}
