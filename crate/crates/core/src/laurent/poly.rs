use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial.
pub type Exponents = Vec<i32>;

/// Multivariate Laurent polynomial with integer coefficients in `t_1, …, t_n`.
///
/// Terms live in a map keyed by exponent vector, so iteration and printing
/// follow lexicographic order. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable `t_i`, with `i` counted from 1.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable t{i} out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: Exponents, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// True for `±t^a`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &LaurentPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "Laurent polynomials over different variable counts"
        );
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by `c·t^shift`.
    pub fn mul_monomial(&self, shift: &[i32], c: &BigInt) -> Self {
        assert_eq!(shift.len(), self.nvars);
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (add_exps(e, shift), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = LaurentPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse of a unit monomial `±t^a`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(LaurentPoly::monomial(
            e.iter().map(|x| -x).collect(),
            c.clone(),
        ))
    }

    /// Integer power allowing negative exponents for unit monomials.
    pub fn pow_signed(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(self.pow(k as u32))
        } else {
            self.unit_inverse().map(|inv| inv.pow((-k) as u32))
        }
    }

    /// Appends fresh variables so the result lives in `nvars` variables.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        LaurentPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Renames `t_i` to `t_{target[i-1]}` (both 1-based); `target` must be a bijection.
    pub fn permute_vars(&self, target: &[usize]) -> Self {
        assert_eq!(target.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = vec![0; self.nvars];
                    for (i, &x) in e.iter().enumerate() {
                        f[target[i] - 1] = x;
                    }
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Componentwise minimum of exponents (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Divides by the greatest common monomial and fixes the overall sign so
    /// that the lexicographically smallest exponent carries a positive
    /// coefficient. Two polynomials agree up to a unit `±t^a` exactly when
    /// their normal forms are equal.
    pub fn normalize_unit(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let shift: Exponents = self.min_exponents().iter().map(|x| -x).collect();
        let sign = if self.terms.values().next().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        // Shifting preserves lexicographic order, so the sign test above is
        // already the test on the shifted polynomial.
        Ok(self.mul_monomial(&shift, &sign))
    }

    /// True if `self = u·other` for a unit `u = ±t^a`.
    pub fn equals_up_to_unit(&self, other: &LaurentPoly) -> bool {
        match (self.normalize_unit(), other.normalize_unit()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact division in the Laurent ring; fails unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self> {
        self.check_arity(divisor);
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (g_lead_e, g_lead_c) = divisor.leading().unwrap();
        let g_lead_e = g_lead_e.clone();
        let g_lead_c = g_lead_c.clone();
        // With a group order on exponents, every quotient term is bounded
        // below by lexmin(f) - lexmin(g); falling under it means no exact quotient.
        let bound = sub_exps(
            self.terms.keys().next().unwrap(),
            divisor.terms.keys().next().unwrap(),
        );
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading() {
            let q_e = sub_exps(e, &g_lead_e);
            if q_e.cmp(&bound) == Ordering::Less {
                return Err(Error::InexactDivision);
            }
            let (q_c, r) = c.div_rem(&g_lead_c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (ge, gc) in &divisor.terms {
                rem.add_term(add_exps(ge, &q_e), -(gc * &q_c));
            }
            quotient.add_term(q_e, q_c);
        }
        Ok(quotient)
    }

    /// Evaluates with every variable set to `+1` or `-1`.
    pub fn eval_signs(&self, signs: &[i8]) -> BigInt {
        assert_eq!(signs.len(), self.nvars);
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let odd_neg = e
                .iter()
                .zip(signs)
                .filter(|(x, s)| **s < 0 && x.rem_euclid(2) == 1)
                .count();
            if odd_neg % 2 == 1 {
                total -= c;
            } else {
                total += c;
            }
        }
        total
    }

    /// Evaluates at complex numbers given as `(re, im)` pairs; used to cross-check exact tests.
    pub fn eval_complex(&self, point: &[(f64, f64)]) -> (f64, f64) {
        assert_eq!(point.len(), self.nvars);
        let mut acc = (0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = (c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (&(re, im), &x) in point.iter().zip(e) {
                let base = if x >= 0 {
                    (re, im)
                } else {
                    let d = re * re + im * im;
                    (re / d, -im / d)
                };
                for _ in 0..x.unsigned_abs() {
                    m = (m.0 * base.0 - m.1 * base.1, m.0 * base.1 + m.1 * base.0);
                }
            }
            acc.0 += m.0;
            acc.1 += m.1;
        }
        acc
    }

    /// Largest absolute coefficient as `i64`, if it fits.
    pub fn max_abs_coeff_i64(&self) -> Option<i64> {
        let mut best = 0i64;
        for c in self.terms.values() {
            best = best.max(c.abs().to_i64()?);
        }
        Some(best)
    }
}

pub(crate) fn add_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.check_arity(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.check_arity(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_arity(rhs);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(add_exps(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[i32]) -> fmt::Result {
    let single = e.len() == 1;
    let mut first = true;
    for (i, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if single {
            write!(f, "t")?;
        } else {
            write!(f, "t{}", i + 1)?;
        }
        if x != 1 {
            write!(f, "^{x}")?;
        }
    }
    Ok(())
}

/// Prints terms from the lexicographically largest exponent down, e.g.
/// `t2^2*t4 - t2^2 - t4^2 + t4`; a polynomial in one variable uses `t`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Exponents,
    coeff: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

/// JSON form: `{"nvars": n, "terms": [{"exps": [...], "coeff": c}, ...]}` in
/// ascending lexicographic order. Coefficients that do not fit in 64 bits are
/// written as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| TermRepr {
                exps: e.clone(),
                coeff: match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(c.to_string()),
                },
            })
            .collect();
        PolyRepr {
            nvars: self.nvars,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c: BigInt = match &t.coeff {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("non-integer coefficient"))?,
                serde_json::Value::String(s) => s
                    .parse()
                    .map_err(|_| D::Error::custom("malformed coefficient"))?,
                _ => return Err(D::Error::custom("coefficient must be a number or string")),
            };
            terms.push((t.exps, c));
        }
        LaurentPoly::from_terms(repr.nvars, terms).map_err(D::Error::custom)
    }
}
