//! Text grammar for scalars and Laurent polynomials.
//!
//! Scalar terms: signed rationals optionally times `i`, `zeta`, `zeta^2`,
//! `zeta^3` (`sqrt_i` is an alias for `zeta`). Laurent terms additionally
//! allow `* t^<int>` with a possibly negative integer exponent, and a
//! parenthesized scalar as coefficient. `Display` output of both types
//! round-trips through these parsers.

use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::scalars::cyclotomic::CycScalar;
use crate::scalars::laurent::LaurentPoly;

pub fn parse_scalar(text: &str) -> Result<CycScalar> {
    let mut p = Parser::new(text);
    let v = p.scalar_sum()?;
    p.expect_eof()?;
    Ok(v)
}

pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    let mut p = Parser::new(text);
    let v = p.laurent_sum()?;
    p.expect_eof()?;
    Ok(v)
}

/// Canonical rendering of one monomial c * t^k (c nonzero).
pub fn format_laurent_term(k: i64, c: &CycScalar) -> String {
    if k == 0 {
        return c.to_string();
    }
    let tpart = if k == 1 {
        "t".to_string()
    } else {
        format!("t^{k}")
    };
    if *c == CycScalar::one() {
        return tpart;
    }
    if *c == CycScalar::one().neg_ref() {
        return format!("-{tpart}");
    }
    let nonzero_coords = c
        .coords()
        .iter()
        .filter(|x| !num::Zero::is_zero(*x))
        .count();
    if nonzero_coords == 1 {
        format!("{c}*{tpart}")
    } else {
        format!("({c})*{tpart}")
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn expect_eof(&mut self) -> Result<()> {
        if self.peek().is_none() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a digit");
        }
        Ok(self.text[start..self.pos]
            .parse()
            .expect("digit run parses as integer"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let numer = self.uint()?;
        if self.eat(b'/') {
            let denom = self.uint()?;
            if num::Zero::is_zero(&denom) {
                return self.err("zero denominator");
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an identifier");
        }
        Ok(&self.text[start..self.pos])
    }

    /// Basis symbol as a scalar: i, zeta, zeta^2, zeta^3, sqrt_i.
    fn symbol(&mut self) -> Result<CycScalar> {
        let at = self.pos;
        let name = self.ident()?;
        match name {
            "i" => Ok(CycScalar::i()),
            "sqrt_i" => Ok(CycScalar::zeta()),
            "zeta" => {
                if self.eat(b'^') {
                    let e = self.uint()?;
                    if e == BigInt::from(2) {
                        Ok(CycScalar::i())
                    } else if e == BigInt::from(3) {
                        Ok(CycScalar::zeta().mul_ref(&CycScalar::i()))
                    } else {
                        self.err("zeta exponent must be 2 or 3")
                    }
                } else {
                    Ok(CycScalar::zeta())
                }
            }
            _ => {
                self.pos = at;
                self.err(format!("unknown symbol '{name}'"))
            }
        }
    }

    fn at_variable_t(&mut self) -> bool {
        // A lone 't' (not the prefix of a longer identifier).
        self.skip_ws();
        self.bytes.get(self.pos) == Some(&b't')
            && !self
                .bytes
                .get(self.pos + 1)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
    }

    /// One unsigned scalar term: rational, symbol, or rational*symbol.
    /// Stops before `* t`, leaving the variable for the Laurent layer.
    fn scalar_term(&mut self) -> Result<CycScalar> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let r = self.rational()?;
                let save = self.pos;
                if self.eat(b'*') {
                    if self.at_variable_t() {
                        self.pos = save;
                        return Ok(CycScalar::from_rational(r));
                    }
                    let s = self.symbol()?;
                    return Ok(s.scale(&r));
                }
                Ok(CycScalar::from_rational(r))
            }
            Some(b) if b.is_ascii_alphabetic() => self.symbol(),
            _ => self.err("expected a scalar term"),
        }
    }

    fn scalar_sum(&mut self) -> Result<CycScalar> {
        let mut acc = CycScalar::zero();
        let mut negate = self.eat(b'-');
        loop {
            let term = self.scalar_term()?;
            acc = if negate {
                acc.sub_ref(&term)
            } else {
                acc.add_ref(&term)
            };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    /// `t` or `t^<signed int>`; returns the exponent.
    fn t_exponent(&mut self) -> Result<i64> {
        self.expect(b't')?;
        if !self.eat(b'^') {
            return Ok(1);
        }
        let negative = self.eat(b'-');
        let e = self.uint()?;
        let e: i64 = e.try_into().map_err(|_| Error::Parse {
            pos: self.pos,
            msg: "exponent out of range".into(),
        })?;
        Ok(if negative { -e } else { e })
    }

    /// One unsigned Laurent term: `(scalar)*t^k`, `coeff*t^k`, `t^k`, or a
    /// bare scalar term.
    fn laurent_term(&mut self) -> Result<LaurentPoly> {
        if self.at_variable_t() {
            let k = self.t_exponent()?;
            return Ok(LaurentPoly::monomial(CycScalar::one(), k));
        }
        let coeff = if self.peek() == Some(b'(') {
            self.expect(b'(')?;
            let c = self.scalar_sum()?;
            self.expect(b')')?;
            c
        } else {
            self.scalar_term()?
        };
        let save = self.pos;
        if self.eat(b'*') {
            if self.at_variable_t() {
                let k = self.t_exponent()?;
                return Ok(LaurentPoly::monomial(coeff, k));
            }
            self.pos = save;
        }
        Ok(LaurentPoly::constant(coeff))
    }

    fn laurent_sum(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        let mut negate = self.eat(b'-');
        loop {
            let term = self.laurent_term()?;
            acc = if negate {
                acc.sub_ref(&term)
            } else {
                acc.add_ref(&term)
            };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }
}
