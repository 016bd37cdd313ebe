//! Text grammar for polynomials.
//!
//! Variables `x0`..`x9`, operators `+ - * ^`, integer and `num/den` rational
//! literals, parentheses, whitespace insensitive.

use num::bigint::BigInt;

use crate::error::Error;
use crate::field::FieldSpec;
use crate::poly::Polynomial;

pub fn parse_polynomial(text: &str, nvars: usize, field: FieldSpec) -> Result<Polynomial, Error> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        nvars,
        field,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
    field: FieldSpec,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, Error> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            if e > u32::MAX as u64 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                match self.bytes.get(self.pos) {
                    Some(c @ b'0'..=b'9') => {
                        let index = (c - b'0') as usize;
                        self.pos += 1;
                        if index >= self.nvars {
                            return Err(Error::UnknownVariable {
                                index,
                                nvars: self.nvars,
                            });
                        }
                        Ok(Polynomial::variable(self.nvars, self.field, index))
                    }
                    _ => Err(self.err("expected digit after `x`")),
                }
            }
            Some(b'-') => {
                // unary minus inside a factor, e.g. `2*-3` is rejected, but
                // `(-3)` comes through base(); keep leading-minus handling in expr
                Err(self.err("unexpected `-`"))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = BigInt::from(self.uint()? as i64);
                if self.bytes.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let den_start = self.pos;
                    let den = self.uint().map_err(|_| Error::Parse {
                        pos: den_start,
                        msg: "expected denominator".to_string(),
                    })?;
                    let s = self.field.from_ratio(&num, &BigInt::from(den as i64))?;
                    Ok(Polynomial::constant(self.nvars, s))
                } else {
                    let s = self.field.from_ratio(&num, &BigInt::from(1))?;
                    Ok(Polynomial::constant(self.nvars, s))
                }
            }
            _ => Err(self.err("expected variable, literal or `(`")),
        }
    }

    fn uint(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer literal too large"))
    }
}
