//! Text syntax: sums of terms such as `3/2*x^2*y - z + 1`, with parentheses and
//! integer powers of parenthesized subexpressions.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::polynomial::{Polynomial, Rational};
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        names,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.power()?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scalar_mul(&c.recip()),
                    Some(_) => {
                        return Err(Error::Parse {
                            position: at,
                            message: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(Error::Parse {
                            position: at,
                            message: "only division by a nonzero constant is allowed".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let k = self.unsigned()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.unsigned()?;
                Ok(Polynomial::constant(self.nvars(), Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.names.iter().position(|n| n == name) {
                    Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                    None => Err(Error::Parse {
                        position: start,
                        message: format!("unknown variable '{name}'"),
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let n: BigInt = digits.parse().expect("digits");
        debug_assert!(!n.is_negative());
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn roundtrip(s: &str) -> String {
        parse_polynomial(s, &names()).unwrap().to_text(&names())
    }

    #[test]
    fn parses_and_prints_canonically() {
        assert_eq!(roundtrip("x^2*y - 3/2*y"), "x^2*y - 3/2*y");
        assert_eq!(roundtrip("y + x"), "x + y");
        assert_eq!(roundtrip("(x+y)*(x-y)"), "x^2 - y^2");
        assert_eq!(roundtrip("0"), "0");
        assert_eq!(roundtrip("-1"), "-1");
        assert_eq!(roundtrip("(x + 1)^2 - 2*x"), "x^2 + 1");
        assert_eq!(roundtrip("x/2 + x/2"), "x");
        assert_eq!(roundtrip(" - z * - z "), "z^2");
    }

    #[test]
    fn reports_positions() {
        match parse_polynomial("x + w", &names()) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x/y", &names()).is_err());
        assert!(parse_polynomial("x/0", &names()).is_err());
        assert!(parse_polynomial("(x", &names()).is_err());
        assert!(parse_polynomial("x y", &names()).is_err());
        assert!(parse_polynomial("", &names()).is_err());
    }
}
