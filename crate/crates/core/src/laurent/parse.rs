//! Text grammar for Laurent polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | 't' digits | 't' | '(' expr ')'
//! ```
//!
//! A bare `t` names the only variable of a univariate polynomial. Negative
//! powers are accepted for unit monomials only.

use num_bigint::BigInt;

use super::LaurentPoly;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl LaurentPoly {
    /// Parses an expression such as `(t4-1)*(t4-t2^2)` or `3(t-1)^5` in `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let normalized = text.replace('−', "-");
        let mut p = Parser {
            src: normalized.as_bytes(),
            pos: 0,
            nvars,
        };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "unexpected trailing input"));
        }
        Ok(value)
    }
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(c) if c == b'(' || c == b't' || c.is_ascii_digit() => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let negative = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let pos = self.pos;
        let k: i64 = self
            .digits()
            .ok_or_else(|| Error::parse(pos, "expected exponent"))?
            .parse()
            .map_err(|_| Error::parse(start, "exponent too large"))?;
        let k = if negative { -k } else { k };
        base.pow_signed(k)
            .ok_or_else(|| Error::parse(start, "negative power of a non-monomial"))
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => {
                let start = self.pos;
                self.pos += 1;
                let index = match self.digits() {
                    Some(d) => d
                        .parse::<usize>()
                        .map_err(|_| Error::parse(start, "bad variable index"))?,
                    None if self.nvars == 1 => 1,
                    None => return Err(Error::parse(self.pos, "expected variable index")),
                };
                if index == 0 || index > self.nvars {
                    return Err(Error::parse(
                        start,
                        format!("variable t{index} out of range 1..={}", self.nvars),
                    ));
                }
                Ok(LaurentPoly::var(self.nvars, index))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let c: BigInt = d.parse().unwrap();
                Ok(LaurentPoly::constant(self.nvars, c))
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected character {:?}", c as char),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }
}
