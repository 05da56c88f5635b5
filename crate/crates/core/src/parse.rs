//! Parser for univariate polynomial strings.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term ("+" term)*
//! term  := coeff | coeff "*" var | var
//! var   := "x" ("^" uint)?
//! coeff := uint | "g" ("^" uint)?
//! ```
//!
//! An integer coefficient is reduced mod p; `g` denotes the residue class t
//! and is only defined for extension degree n >= 2. Exponents of x are
//! reduced through x^q = x, so the result always has degree < q. Errors
//! carry the byte offset at which parsing failed.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::func::UnivariatePoly;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(Error::Parse {
                    pos: start,
                    msg: "number too large".into(),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return self.fail("expected a number");
        }
        Ok(value)
    }

    /// Optional "^ uint" suffix; defaults to 1.
    fn parse_exponent(&mut self) -> Result<u64> {
        if self.peek() == Some(b'^') {
            self.bump();
            self.parse_uint()
        } else {
            Ok(1)
        }
    }

    /// "x" ("^" uint)? -- returns the exponent.
    fn parse_var(&mut self) -> Result<u64> {
        if self.peek() != Some(b'x') {
            return self.fail("expected the variable x");
        }
        self.bump();
        self.parse_exponent()
    }

    /// One term; returns (coefficient, exponent of x).
    fn parse_term(&mut self, spec: &FieldSpec) -> Result<(FieldElement, u64)> {
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => Some(spec.scalar(self.parse_uint()?)),
            Some(b'g') => {
                if spec.n() < 2 {
                    return self.fail("g denotes the residue class t and needs n >= 2");
                }
                self.bump();
                let e = self.parse_exponent()?;
                Some(spec.pow(&spec.generator_t().unwrap(), e))
            }
            Some(b'x') => None,
            Some(_) => return self.fail("expected a coefficient or the variable x"),
            None => return self.fail("expected a term"),
        };
        match coeff {
            None => Ok((spec.one(), self.parse_var()?)),
            Some(c) => {
                if self.peek() == Some(b'*') {
                    self.bump();
                    Ok((c, self.parse_var()?))
                } else {
                    Ok((c, 0))
                }
            }
        }
    }
}

/// Parses a polynomial string into a reduced univariate polynomial.
pub fn parse_univariate(spec: &FieldSpec, input: &str) -> Result<UnivariatePoly> {
    let mut parser = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let q = spec.order();
    let mut coeffs = vec![spec.zero(); q as usize];
    loop {
        let (c, d) = parser.parse_term(spec)?;
        // as functions x^q = x, so exponents fold into 0..q
        let d = if d == 0 { 0 } else { (d - 1) % (q - 1) + 1 };
        coeffs[d as usize] = spec.add(&coeffs[d as usize], &c);
        match parser.peek() {
            None => break,
            Some(b'+') => parser.bump(),
            Some(_) => return parser.fail("expected '+' or end of input"),
        }
    }
    UnivariatePoly::new(spec.clone(), coeffs)
}
