//! Parser for polynomial expressions in a single variable.
//!
//! Grammar: integer and `p/q` literals, the variable, `+ - * ^` with
//! nonnegative integer exponents, parentheses and unary minus. Implicit
//! multiplication is rejected. Error offsets are byte offsets.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{Rational, UniPoly};

/// Parse `s` as a polynomial in `var`.
pub fn parse_poly(s: &str, var: char) -> Result<UniPoly> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, var };
    let e = p.expr()?;
    let at = p.pos;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected(at));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: char,
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

    fn syntax(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax { offset, message: message.into() }
    }

    fn unexpected(&self, at: usize) -> Error {
        let mut q = at;
        while q < self.src.len() && self.src[q].is_ascii_whitespace() {
            q += 1;
        }
        match self.src.get(q) {
            Some(&c) if c.is_ascii_alphabetic() && c as char != self.var => Error::VariableMismatch {
                offset: q,
                expected: self.var,
                found: c as char,
            },
            Some(&c) => self.syntax(at, format!("unexpected '{}'", c as char)),
            None => self.syntax(at, "unexpected end of input"),
        }
    }

    fn expr(&mut self) -> Result<UniPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<UniPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<UniPoly> {
        let at = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.pos = at;
        self.power()
    }

    fn power(&mut self) -> Result<UniPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        self.skip_ws();
        let digits = self.digits();
        let e: u32 = digits
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| self.syntax(at, "expected a nonnegative integer exponent"))?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<UniPoly> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                let close = self.pos;
                if self.peek() != Some(b')') {
                    return Err(self.syntax(close, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().unwrap().parse().expect("ascii digits");
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let dpos = self.pos;
                    let d: BigInt = self
                        .digits()
                        .ok_or_else(|| self.syntax(dpos, "expected a denominator"))?
                        .parse()
                        .expect("ascii digits");
                    if d == BigInt::from(0) {
                        return Err(self.syntax(dpos, "zero denominator"));
                    }
                    return Ok(UniPoly::constant(Rational::new(n, d)));
                }
                Ok(UniPoly::constant(Rational::from_integer(n)))
            }
            Some(c) if c as char == self.var => {
                self.pos += 1;
                Ok(UniPoly::x())
            }
            _ => Err(self.unexpected(at)),
        }
    }
}
