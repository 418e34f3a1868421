//! Recursive-descent parser for the scalar-field expression language.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := '-' factor | atom ('^' exponent)*
//! atom     := number | 'x' | 'y' | 'z' | '(' expr ')' | 'sqrt' '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Whitespace is ignored between tokens and `^` is right-associative.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{int, rational_powi, Axis, Rational, ScalarField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    UnknownIdentifier(String),
    MalformedExponent(String),
    MalformedNumber,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{} at offset {offset}", describe(.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::UnexpectedEnd => "syntax error: unexpected end of input".into(),
        ParseErrorKind::UnexpectedChar(c) => format!("syntax error: unexpected character '{c}'"),
        ParseErrorKind::UnknownIdentifier(name) => format!("unknown identifier '{name}'"),
        ParseErrorKind::MalformedExponent(why) => format!("malformed exponent ({why})"),
        ParseErrorKind::MalformedNumber => "malformed number".into(),
    }
}

/// Parse an expression over `x`, `y`, `z`.
pub fn parse(text: &str) -> Result<ScalarField, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(c) => Err(p.error_here(ParseErrorKind::UnexpectedChar(c as char))),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, offset: self.pos }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            None => self.error_here(ParseErrorKind::UnexpectedEnd),
            Some(c) => {
                // report the full char for non-ascii input
                let ch =
                    std::str::from_utf8(&self.src[self.pos..]).ok().and_then(|s| s.chars().next()).unwrap_or(c as char);
                self.error_here(ParseErrorKind::UnexpectedChar(ch))
            }
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<ScalarField, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = ScalarField::add(&acc, &rhs);
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = ScalarField::sub(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarField, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = ScalarField::mul(&acc, &rhs);
            } else if self.eat(b'/') {
                let rhs = self.factor()?;
                acc = ScalarField::div(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ScalarField, ParseError> {
        if self.eat(b'-') {
            let inner = self.factor()?;
            return Ok(ScalarField::neg(&inner));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.exponent_chain()?;
            return Ok(ScalarField::pow(&base, e));
        }
        Ok(base)
    }

    /// Exponent followed by any further `^` exponents, folded right to left.
    fn exponent_chain(&mut self) -> Result<Rational, ParseError> {
        let start = self.pos;
        let head = self.exponent()?;
        if !self.eat(b'^') {
            return Ok(head);
        }
        let tail = self.exponent_chain()?;
        if !tail.is_integer() {
            return Err(ParseError {
                kind: ParseErrorKind::MalformedExponent("iterated exponent must be an integer".into()),
                offset: start,
            });
        }
        tail.to_integer().to_i64().and_then(|t| rational_powi(&head, t)).ok_or(ParseError {
            kind: ParseErrorKind::MalformedExponent("exponent out of range".into()),
            offset: start,
        })
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let malformed = |why: &str| ParseError { kind: ParseErrorKind::MalformedExponent(why.into()), offset: start };
        if self.eat(b'(') {
            let num = self.signed_integer().map_err(|_| malformed("expected integer"))?;
            let den = if self.eat(b'/') {
                self.signed_integer().map_err(|_| malformed("expected integer denominator"))?
            } else {
                BigInt::one()
            };
            if !self.eat(b')') {
                return Err(malformed("expected ')'"));
            }
            if den.is_zero() {
                return Err(malformed("zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        match self.signed_integer() {
            Ok(n) => Ok(Rational::from_integer(n)),
            Err(_) => Err(malformed("expected integer or (p/q)")),
        }
    }

    fn signed_integer(&mut self) -> Result<BigInt, ParseError> {
        let negative = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        // a decimal point here means a non-integer exponent
        if self.peek() == Some(b'.') {
            return Err(self.unexpected());
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let n: BigInt = digits.parse().expect("digits parse");
        Ok(if negative { -n } else { n })
    }

    fn atom(&mut self) -> Result<ScalarField, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.unexpected()),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                match ident {
                    "x" => Ok(ScalarField::var(Axis::X)),
                    "y" => Ok(ScalarField::var(Axis::Y)),
                    "z" => Ok(ScalarField::var(Axis::Z)),
                    "sqrt" => {
                        self.expect(b'(')?;
                        let e = self.expr()?;
                        self.expect(b')')?;
                        Ok(ScalarField::sqrt(&e))
                    }
                    other => {
                        Err(ParseError { kind: ParseErrorKind::UnknownIdentifier(other.to_string()), offset: start })
                    }
                }
            }
            Some(_) => Err(self.unexpected()),
        }
    }

    /// Decimal literal `d+[.d*][e[+-]d+]`, read as an exact rational.
    fn number(&mut self) -> Result<ScalarField, ParseError> {
        let start = self.pos;
        let bad = ParseError { kind: ParseErrorKind::MalformedNumber, offset: start };
        let mut mantissa = String::new();
        let mut frac_digits: i64 = 0;
        while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
            mantissa.push(c as char);
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
                mantissa.push(c as char);
                frac_digits += 1;
                self.pos += 1;
            }
        }
        if mantissa.is_empty() {
            return Err(bad);
        }
        let mut exp10: i64 = 0;
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            let save = self.pos;
            self.pos += 1;
            let neg = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let ds = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if ds == self.pos {
                self.pos = save;
                return Err(bad);
            }
            let digits = std::str::from_utf8(&self.src[ds..self.pos]).expect("ascii");
            exp10 = digits.parse::<i64>().map_err(|_| bad.clone())?;
            if neg {
                exp10 = -exp10;
            }
        }
        let m: BigInt = mantissa.parse().map_err(|_| bad.clone())?;
        let shift = exp10 - frac_digits;
        if shift.unsigned_abs() > 4096 {
            return Err(bad);
        }
        let ten = rational_powi(&int(10), shift).expect("nonzero base");
        Ok(ScalarField::constant(Rational::from_integer(m) * ten))
    }
}

/// Exact rational value of a decimal literal such as `-2.5` or `1e-3`.
pub(crate) fn parse_decimal(text: &str) -> Option<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let e = parse(body).ok()?;
    let q = e.as_const()?.clone();
    if q.is_negative() {
        return None;
    }
    Some(if neg { -q } else { q })
}
