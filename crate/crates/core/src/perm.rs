use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n`, stored as its one-line notation `(τ_1, …, τ_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("duplicate entry {v}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// Parses `341256` (single digits) or `3,4,1,2,5,6`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let values = if text.contains(',') {
            let mut out = Vec::new();
            let mut offset = 0;
            for part in text.split(',') {
                let trimmed = part.trim();
                let v = trimmed.parse::<usize>().map_err(|_| {
                    Error::parse(offset, format!("expected integer, found {trimmed:?}"))
                })?;
                out.push(v);
                offset += part.len() + 1;
            }
            out
        } else {
            let mut out = Vec::new();
            for (pos, c) in text.char_indices() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| Error::parse(pos, format!("expected digit, found {c:?}")))?;
                out.push(d as usize);
            }
            out
        };
        Permutation::new(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `τ_i` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: usize) -> usize {
        self.0
            .iter()
            .position(|&v| v == value)
            .expect("value in range")
            + 1
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Cyclically rotates so that the largest value comes last: with `τ_k = n`,
    /// position `i` of the result holds `τ_{k+i mod n}`.
    ///
    /// Returns the rotated permutation and, for each of its positions, the
    /// original position it came from.
    pub fn rotate_top_last(&self) -> (Permutation, Vec<usize>) {
        let n = self.len();
        let k = self.position_of(n);
        let origin: Vec<usize> = (1..=n).map(|i| (k + i - 1) % n + 1).collect();
        let values = origin.iter().map(|&j| self.at(j)).collect();
        (Permutation(values), origin)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}
