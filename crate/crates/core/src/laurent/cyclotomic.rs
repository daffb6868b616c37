use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LaurentPoly;
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// An element `Σ c_a ζ^a` of `Z[ζ]`, `ζ` a primitive `p`-th root of unity.
///
/// The representation is redundant: since `1 + ζ + ⋯ + ζ^{p-1} = 0` is the
/// only integer relation, the value is zero exactly when all `p`
/// coefficients are equal.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclotomicValue {
    prime: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicValue {
    pub fn zero(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(CyclotomicValue {
            prime: p,
            coeffs: vec![BigInt::zero(); p as usize],
        })
    }

    /// The value `c·ζ^a`.
    pub fn power(p: u64, a: u64, c: impl Into<BigInt>) -> Result<Self> {
        let mut v = Self::zero(p)?;
        v.coeffs[(a % p) as usize] = c.into();
        Ok(v)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }

    /// Numerical value at `ζ = exp(2πi/p)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.prime as f64;
        let mut acc = (0.0, 0.0);
        for (a, c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * a as f64 / p;
            let c = c.to_f64().unwrap_or(f64::NAN);
            acc.0 += c * theta.cos();
            acc.1 += c * theta.sin();
        }
        acc
    }
}

impl PartialEq for CyclotomicValue {
    fn eq(&self, other: &Self) -> bool {
        if self.prime != other.prime {
            return false;
        }
        // Equal iff the difference has all coefficients equal.
        let d0 = &self.coeffs[0] - &other.coeffs[0];
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a - b == d0)
    }
}

impl Eq for CyclotomicValue {}

impl Add<&CyclotomicValue> for &CyclotomicValue {
    type Output = CyclotomicValue;

    fn add(self, rhs: &CyclotomicValue) -> CyclotomicValue {
        assert_eq!(self.prime, rhs.prime);
        CyclotomicValue {
            prime: self.prime,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul<&CyclotomicValue> for &CyclotomicValue {
    type Output = CyclotomicValue;

    fn mul(self, rhs: &CyclotomicValue) -> CyclotomicValue {
        assert_eq!(self.prime, rhs.prime);
        let p = self.prime as usize;
        let mut coeffs = vec![BigInt::zero(); p];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                coeffs[(a + b) % p] += x * y;
            }
        }
        CyclotomicValue {
            prime: self.prime,
            coeffs,
        }
    }
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| format!("{c}*z^{a}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn residue(x: i32, p: u64) -> u64 {
    (x as i64).rem_euclid(p as i64) as u64
}

impl LaurentPoly {
    /// Evaluates at `t_i = ζ^{point[i]}` exactly.
    pub fn eval_torsion(&self, p: u64, point: &[u64]) -> Result<CyclotomicValue> {
        if point.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let mut v = CyclotomicValue::zero(p)?;
        if let Some(&bad) = point.iter().find(|&&a| a >= p) {
            return Err(Error::IndexOutOfRange {
                what: "residue",
                index: bad as usize,
                max: p as usize - 1,
            });
        }
        for (e, c) in self.terms() {
            let bucket = e
                .iter()
                .zip(point)
                .fold(0u64, |acc, (&x, &a)| (acc + residue(x, p) * a) % p);
            v.coeffs[bucket as usize] += c;
        }
        Ok(v)
    }
}

/// A polynomial prepared for repeated zero tests on `Ω_p^n`.
#[derive(Clone, Debug)]
pub struct TorsionEvaluator {
    prime: u64,
    nvars: usize,
    exps: Vec<Vec<u64>>,
    coeffs: Coeffs,
}

#[derive(Clone, Debug)]
enum Coeffs {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl TorsionEvaluator {
    pub fn new(poly: &LaurentPoly, p: u64) -> Result<Self> {
        check_prime(p)?;
        let exps = poly
            .terms()
            .map(|(e, _)| e.iter().map(|&x| residue(x, p)).collect())
            .collect();
        let small: Option<Vec<i64>> = poly.terms().map(|(_, c)| c.to_i64()).collect();
        let coeffs = match small {
            Some(v) => Coeffs::Small(v),
            None => Coeffs::Big(poly.terms().map(|(_, c)| c.clone()).collect()),
        };
        Ok(TorsionEvaluator {
            prime: p,
            nvars: poly.nvars(),
            exps,
            coeffs,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Exact zero test at `t_i = ζ^{point[i]}`.
    pub fn vanishes_at(&self, point: &[u64]) -> bool {
        let p = self.prime as usize;
        let bucket_of = |e: &Vec<u64>| -> usize {
            (e.iter().zip(point).map(|(x, a)| x * a).sum::<u64>() % self.prime) as usize
        };
        match &self.coeffs {
            Coeffs::Small(cs) => {
                // i128 buckets cannot overflow for fewer than 2^63 terms.
                let mut buckets = vec![0i128; p];
                for (e, &c) in self.exps.iter().zip(cs) {
                    buckets[bucket_of(e)] += c as i128;
                }
                buckets.windows(2).all(|w| w[0] == w[1])
            }
            Coeffs::Big(cs) => {
                let mut buckets = vec![BigInt::zero(); p];
                for (e, c) in self.exps.iter().zip(cs) {
                    buckets[bucket_of(e)] += c;
                }
                buckets.windows(2).all(|w| w[0] == w[1])
            }
        }
    }
}

/// All points of `Ω_p^n`, as residue vectors, in lexicographic order of index.
pub fn torsion_point(p: u64, n: usize, mut index: u64) -> Vec<u64> {
    let mut point = vec![0; n];
    for slot in point.iter_mut().rev() {
        *slot = index % p;
        index /= p;
    }
    point
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite() {
        let f = LaurentPoly::one(1);
        assert_eq!(f.eval_torsion(4, &[0]).unwrap_err(), Error::NotPrime(4));
        assert!(TorsionEvaluator::new(&f, 1).is_err());
    }

    #[test]
    fn simple_values() {
        let one = LaurentPoly::one(2);
        assert!(!one.eval_torsion(3, &[1, 2]).unwrap().is_zero());
        let f = LaurentPoly::parse("t1*t2 - 1", 2).unwrap();
        assert!(f.eval_torsion(2, &[1, 1]).unwrap().is_zero());
        assert!(!f.eval_torsion(2, &[1, 0]).unwrap().is_zero());
        // 1 + z + z^2 = 0 at p = 3
        let g = LaurentPoly::parse("1 + t + t^2", 1).unwrap();
        assert!(g.eval_torsion(3, &[1]).unwrap().is_zero());
        assert!(!g.eval_torsion(3, &[0]).unwrap().is_zero());
    }

    #[test]
    fn evaluator_agrees_with_direct() {
        let f = LaurentPoly::parse("(t1-1)*(t2^2 - t1^-1*t3) + 5*t3", 3).unwrap();
        let ev = TorsionEvaluator::new(&f, 5).unwrap();
        for idx in 0..125 {
            let pt = torsion_point(5, 3, idx);
            assert_eq!(
                ev.vanishes_at(&pt),
                f.eval_torsion(5, &pt).unwrap().is_zero()
            );
        }
    }
}
