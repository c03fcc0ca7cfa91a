//! Tokenizer and recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//! coeff  := digits ['/' digits]
//! factor := name ['^' ['-'] digits]
//! name   := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace between tokens is ignored. Variable names are resolved by the
//! caller, which knows the declared ring.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Factor {
    pub name: String,
    pub exponent: i64,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ParsedTerm {
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn name(&mut self) -> Result<(String, usize), AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return self.error("expected a variable name"),
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok((text.to_string(), start))
    }

    fn factor(&mut self) -> Result<Factor, AlgebraError> {
        let (name, position) = self.name()?;
        let mut exponent = 1i64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let negative = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.pos;
            let value = self.digits()?;
            let value: i64 = value.try_into().map_err(|_| AlgebraError::Syntax {
                position: at,
                message: "exponent out of range".into(),
            })?;
            exponent = if negative { -value } else { value };
        }
        Ok(Factor {
            name,
            exponent,
            position,
        })
    }

    fn term(&mut self) -> Result<ParsedTerm, AlgebraError> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.digits()?;
                let mut denom = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    denom = self.digits()?;
                    if denom.is_zero() {
                        return Err(AlgebraError::Syntax {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                }
                coeff = Rational::new(numer, denom);
                if self.peek() != Some(b'*') {
                    return Ok(ParsedTerm { coeff, factors });
                }
                self.pos += 1;
                factors.push(self.factor()?);
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => factors.push(self.factor()?),
            Some(_) => return self.error("expected a coefficient or a variable"),
            None => return self.error("unexpected end of input"),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(ParsedTerm { coeff, factors })
    }
}

pub(crate) fn parse_terms(text: &str) -> Result<Vec<ParsedTerm>, AlgebraError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        None => return cur.error("empty polynomial"),
        _ => false,
    };
    loop {
        let mut term = cur.term()?;
        if negative {
            term.coeff = -term.coeff;
        }
        terms.push(term);
        match cur.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return cur.error("expected '+', '-', '*' or end of input"),
        }
        cur.pos += 1;
    }
    Ok(terms)
}
