use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::intmat;

/// Image of one input variable: `sign · u^exps`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedMonomial {
    pub sign: i8,
    pub exps: Vec<i32>,
}

/// Ring homomorphism `t_i ↦ ±u^{v_i}` from Laurent polynomials in
/// `nvars_in` variables to Laurent polynomials in `nvars_out` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialSubstitution {
    nvars_in: usize,
    nvars_out: usize,
    images: Vec<SignedMonomial>,
}

impl MonomialSubstitution {
    pub fn new(nvars_out: usize, images: Vec<SignedMonomial>) -> Result<Self> {
        for img in &images {
            if img.exps.len() != nvars_out {
                return Err(Error::ArityMismatch {
                    expected: nvars_out,
                    found: img.exps.len(),
                });
            }
            if img.sign != 1 && img.sign != -1 {
                return Err(Error::Unsupported(format!("sign {} is not ±1", img.sign)));
            }
        }
        Ok(MonomialSubstitution {
            nvars_in: images.len(),
            nvars_out,
            images,
        })
    }

    /// Sign-free substitution whose `i`-th row is the exponent vector of `t_i`'s image.
    pub fn from_matrix(nvars_out: usize, rows: Vec<Vec<i32>>) -> Result<Self> {
        Self::new(
            nvars_out,
            rows.into_iter()
                .map(|exps| SignedMonomial { sign: 1, exps })
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i32::from(i == j)).collect())
            .collect();
        Self::from_matrix(n, rows).unwrap()
    }

    /// `t_i ↦ t_{target[i-1]}`.
    pub fn permutation(target: &[usize]) -> Self {
        let n = target.len();
        let rows = target
            .iter()
            .map(|&j| (1..=n).map(|k| i32::from(k == j)).collect())
            .collect();
        Self::from_matrix(n, rows).unwrap()
    }

    pub fn nvars_in(&self) -> usize {
        self.nvars_in
    }

    pub fn nvars_out(&self) -> usize {
        self.nvars_out
    }

    pub fn images(&self) -> &[SignedMonomial] {
        &self.images
    }

    pub fn is_sign_free(&self) -> bool {
        self.images.iter().all(|m| m.sign == 1)
    }

    fn exponent_rows(&self) -> Vec<Vec<i64>> {
        self.images
            .iter()
            .map(|m| m.exps.iter().map(|&x| x as i64).collect())
            .collect()
    }

    /// Square with unimodular exponent matrix.
    pub fn is_invertible(&self) -> bool {
        self.nvars_in == self.nvars_out
            && intmat::det(&self.exponent_rows()).magnitude() == &1u32.into()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::Unsupported("substitution is not invertible".into()));
        }
        // t_i = s_i u^{V_i}  ⇒  u_j = Π_i (s_i t_i)^{W_ji} with W = V^{-1}.
        let w = intmat::inverse_unimodular(&self.exponent_rows()).expect("unimodular");
        let images = w
            .iter()
            .map(|row| {
                let odd_neg = row
                    .iter()
                    .zip(&self.images)
                    .filter(|(x, m)| m.sign < 0 && x.rem_euclid(2) == 1)
                    .count();
                SignedMonomial {
                    sign: if odd_neg % 2 == 1 { -1 } else { 1 },
                    exps: row.iter().map(|&x| x as i32).collect(),
                }
            })
            .collect();
        Self::new(self.nvars_in, images)
    }

    /// Applies `self`, then `next`.
    pub fn then(&self, next: &MonomialSubstitution) -> Result<Self> {
        if self.nvars_out != next.nvars_in {
            return Err(Error::ArityMismatch {
                expected: next.nvars_in,
                found: self.nvars_out,
            });
        }
        let images = self
            .images
            .iter()
            .map(|m| {
                let mut sign = m.sign;
                let mut exps = vec![0i32; next.nvars_out];
                for (j, &x) in m.exps.iter().enumerate() {
                    let img = &next.images[j];
                    if img.sign < 0 && x.rem_euclid(2) == 1 {
                        sign = -sign;
                    }
                    for (e, &y) in exps.iter_mut().zip(&img.exps) {
                        *e += x * y;
                    }
                }
                SignedMonomial { sign, exps }
            })
            .collect();
        Self::new(next.nvars_out, images)
    }
}

impl LaurentPoly {
    pub fn substitute(&self, sub: &MonomialSubstitution) -> Result<LaurentPoly> {
        if self.nvars() != sub.nvars_in {
            return Err(Error::ArityMismatch {
                expected: sub.nvars_in,
                found: self.nvars(),
            });
        }
        let mut out = LaurentPoly::zero(sub.nvars_out);
        for (e, c) in self.terms() {
            let mut exps = vec![0i32; sub.nvars_out];
            let mut negate = false;
            for (&x, img) in e.iter().zip(&sub.images) {
                if x == 0 {
                    continue;
                }
                if img.sign < 0 && x.rem_euclid(2) == 1 {
                    negate = !negate;
                }
                for (slot, &y) in exps.iter_mut().zip(&img.exps) {
                    *slot += x * y;
                }
            }
            let c: BigInt = if negate { -c } else { c.clone() };
            out.add_term(exps, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn fiber_to_meridian_coordinates() {
        // t_4 ↦ t_1 t_2 t_3 t_4 carries (t_4 - 1)^2 to (t_1 t_2 t_3 t_4 - 1)^2.
        let mut rows: Vec<Vec<i32>> = (0..4)
            .map(|i| (0..4).map(|j| i32::from(i == j)).collect())
            .collect();
        rows[3] = vec![1, 1, 1, 1];
        let sub = MonomialSubstitution::from_matrix(4, rows).unwrap();
        let got = p("(t4-1)^2", 4).substitute(&sub).unwrap();
        assert_eq!(got, p("(t1*t2*t3*t4-1)^2", 4));
        assert!(sub.is_invertible());
        let back = got.substitute(&sub.inverse().unwrap()).unwrap();
        assert_eq!(back, p("(t4-1)^2", 4));
    }

    #[test]
    fn even_power_kills_sign() {
        let mut images: Vec<SignedMonomial> = MonomialSubstitution::identity(4).images().to_vec();
        images[1].sign = -1;
        let sub = MonomialSubstitution::new(4, images).unwrap();
        let f = p("t4 - t2^2", 4);
        assert_eq!(f.substitute(&sub).unwrap(), f);
        assert_eq!(p("t2", 4).substitute(&sub).unwrap(), p("-t2", 4));
    }

    #[test]
    fn identity_and_arity() {
        let f = p("t1^-1*t2 + 3", 2);
        assert_eq!(f.substitute(&MonomialSubstitution::identity(2)).unwrap(), f);
        assert!(f.substitute(&MonomialSubstitution::identity(3)).is_err());
    }

    #[test]
    fn signed_inverse_roundtrip() {
        let sub = MonomialSubstitution::new(
            2,
            vec![
                SignedMonomial {
                    sign: -1,
                    exps: vec![1, 1],
                },
                SignedMonomial {
                    sign: 1,
                    exps: vec![0, 1],
                },
            ],
        )
        .unwrap();
        let round = sub.then(&sub.inverse().unwrap()).unwrap();
        assert_eq!(round, MonomialSubstitution::identity(2));
    }
}
