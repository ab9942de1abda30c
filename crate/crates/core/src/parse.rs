//! Text format for polynomials.
//!
//! Canonical output is a signed sum of terms, highest degree first, e.g.
//! `x^5 - 10*x^3*y^2 + 5*x*y^4` or `3/2*x*y - 7`. The reader accepts that
//! form plus products, parentheses, implicit multiplication before a
//! variable or `(`, integer powers, and the Unicode minus sign. A `/` is
//! only legal inside a rational literal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            'x' | 'y' => Tok::Var(c),
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            other => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> PResult<Polynomial<BigRational>> {
        let mut acc = Polynomial::zero();
        let mut negate = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            if negate {
                acc -= &t;
            } else {
                acc += &t;
            }
            negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Polynomial<BigRational>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Var(_)) | Some(Tok::Open) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Slash) => {
                    return self.err("'/' is only allowed inside a rational literal")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> PResult<Polynomial<BigRational>> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let e: u32 = match u32::try_from(&n) {
                    Ok(e) if e <= 4096 => e,
                    _ => return self.err("exponent too large"),
                };
                self.pos += 1;
                Ok(base.pow(e))
            }
            Some(Tok::Minus) => self.err("negative exponent"),
            _ => self.err("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> PResult<Polynomial<BigRational>> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Polynomial::constant(BigRational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("expected a positive integer denominator"),
                    }
                } else {
                    Ok(Polynomial::constant(BigRational::from_integer(n)))
                }
            }
            Some(Tok::Var('x')) => {
                self.pos += 1;
                Ok(Polynomial::x())
            }
            Some(Tok::Var(_)) => {
                self.pos += 1;
                Ok(Polynomial::y())
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial with exact rational coefficients.
pub fn parse_poly(text: &str) -> Result<Polynomial<BigRational>, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    if parser.toks.is_empty() {
        return parser.err("empty input");
    }
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("unexpected trailing input");
    }
    Ok(p)
}

impl<C: Scalar> FromStr for Polynomial<C> {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Ok(parse_poly(s)?.map_coeffs(C::from_rational))
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = if negative { -c.clone() } else { c.clone() };
            let mut text = a.to_string();
            // complex coefficients print as `a+bi`
            if text.chars().skip(1).any(|ch| ch == '+' || ch == '-') {
                text = format!("({text})");
            }
            if m.degree() == 0 {
                f.write_str(&text)?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{text}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Polynomial<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_poly(&text).map_err(D::Error::custom)
    }
}
