//! Recursive-descent parser for the expression text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | symbol | '(' expr ')'
//! symbol := [A-Za-z][A-Za-z0-9_:]*
//! ```

use super::int::Int;
use super::rf::Rf;
use super::symbol::Symbol;
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Rf> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Rf> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Rf> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Rf> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let e = self.integer()?;
            let e: i32 = e
                .to_string()
                .parse()
                .map_err(|_| self.err("exponent out of range"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Int> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse::<Int>().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Rf> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Rf::from_int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || matches!(self.s[self.pos], b'_' | b':'))
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(Rf::sym(Symbol::new(name)))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses a rational function from the text grammar.
pub fn parse_rf(s: &str) -> Result<Rf> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for text in [
            "0",
            "-3",
            "3*l1^2*kap - z:1",
            "(1)/(t:1:1 - z:1)",
            "(-t:1:2 + 2)/(l1^2 - 1)",
            "L:2:1*l1 + 7",
        ] {
            let f = parse_rf(text).unwrap();
            let g = parse_rf(&f.to_string()).unwrap();
            assert_eq!(f, g, "{text}");
            assert_eq!(f.to_string(), g.to_string());
        }
    }

    #[test]
    fn arithmetic_in_text() {
        let f = parse_rf("(t^2 - z^2)/(t - z)").unwrap();
        assert_eq!(f, parse_rf("z + t").unwrap());
        assert_eq!(parse_rf("2^-2").unwrap(), Rf::ratio(1, 4));
        assert!(parse_rf("1/0").is_err());
        assert!(parse_rf("(1").is_err());
    }
}
