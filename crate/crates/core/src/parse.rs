//! Text grammar for polynomials:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*      division only by nonzero constants
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'T' | 'x' | 'lambda' | 'mu' | '(' expr ')'
//! ```
//!
//! Rationals are written `a/b`, e.g. `(T + 2*lambda)^2 - 1/3*x`.

use crate::poly::{Poly, Var};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr<F: Scalar>(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term<F: Scalar>(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary::<F>()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return self.err("division only by a nonzero constant");
                    }
                    acc = acc.scale(&(F::one() / d.constant_term()));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary<F: Scalar>(&mut self) -> Result<Poly<F>, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary::<F>()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<F: Scalar>(&mut self) -> Result<Poly<F>, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return self.err("expected integer exponent");
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= 64 => e,
                _ => return self.err("exponent out of range"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom<F: Scalar>(&mut self) -> Result<Poly<F>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                // Digit by digit: the radix parser of `Ratio` wants a slash.
                let ten = F::from_int(10);
                let v = d.bytes().fold(F::zero(), |acc, b| acc * ten.clone() + F::from_int((b - b'0') as i64));
                Ok(Poly::constant(v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match Var::from_name(&name) {
                    Some(v) => Ok(Poly::var(v)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable '{name}'"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_poly<F: Scalar>(s: &str) -> Result<Poly<F>, ParseError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}
