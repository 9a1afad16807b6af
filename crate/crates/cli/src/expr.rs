//! Rational-map input: an expression grammar the corpus formulas paste into
//! directly, and a coefficient file format for maps given by raw
//! coefficients.
//!
//! Expressions use integer literals, one variable letter (canonically `z`),
//! `+ - * / ^`, parentheses, and juxtaposition for multiplication, so
//! `4z^3(1-z^3)` parses as written.  All arithmetic is exact; the result is
//! a reduced [`RationalMap`].

use num::{BigInt, BigRational};
use thiserror::Error;

use fiberprod::gauss::GaussianRational;
use fiberprod::mononum::{MapError, Poly, RationalMap};

use crate::cover_file::parse_gaussian;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("position {0}: {1}")]
    Parse(usize, String),
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("exponent must be a nonnegative integer literal")]
    BadExponent,
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Variable,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let mut out = Vec::new();
    let mut variable: Option<char> = None;
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let literal: String = bytes[start..i].iter().collect();
                let value = literal
                    .parse()
                    .map_err(|e| ExprError::Parse(start, format!("bad integer: {e}")))?;
                out.push((start, Token::Number(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                if c == 'i' {
                    return Err(ExprError::Parse(
                        i,
                        "the letter 'i' is reserved; use a coefficient file for Gaussian \
                         coefficients"
                            .into(),
                    ));
                }
                match variable {
                    None => variable = Some(c),
                    Some(v) if v == c => {}
                    Some(v) => {
                        return Err(ExprError::Parse(
                            i,
                            format!("two different variables {v:?} and {c:?}"),
                        ))
                    }
                }
                Token::Variable
            }
            other => {
                return Err(ExprError::Parse(i, format!("unexpected character {other:?}")));
            }
        };
        out.push((i, token));
        i += 1;
    }
    Ok(out)
}

/// A rational function as a numerator/denominator pair, unreduced.
#[derive(Clone)]
struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    fn constant(value: BigInt) -> Self {
        RationalFn {
            num: Poly::constant(GaussianRational::real(BigRational::from_integer(value))),
            den: Poly::one(),
        }
    }

    fn variable() -> Self {
        RationalFn {
            num: Poly::monomial(GaussianRational::one(), 1),
            den: Poly::one(),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        RationalFn {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        RationalFn {
            num: self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        RationalFn {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        }
    }

    fn div(&self, rhs: &Self) -> Result<Self, ExprError> {
        if rhs.num.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(RationalFn {
            num: self.num.mul(&rhs.den),
            den: self.den.mul(&rhs.num),
        })
    }

    fn neg(&self) -> Self {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn pow(&self, exponent: u32) -> Self {
        let mut out = RationalFn::constant(BigInt::from(1));
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<RationalFn, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFn, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs)?;
                }
                // Juxtaposition: `4z`, `z(`, `)(`, `2(1-z)`.
                Some(Token::Number(_)) | Some(Token::Variable) | Some(Token::Open) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFn, ExprError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.next();
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFn, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Number(n)) => {
                    let exponent: u32 = n.try_into().map_err(|_| ExprError::BadExponent)?;
                    Ok(base.pow(exponent))
                }
                _ => Err(ExprError::BadExponent),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RationalFn, ExprError> {
        let at = self.here();
        match self.next() {
            Some(Token::Number(n)) => Ok(RationalFn::constant(n)),
            Some(Token::Variable) => Ok(RationalFn::variable()),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(ExprError::Parse(at, "unclosed parenthesis".into())),
                }
            }
            other => Err(ExprError::Parse(at, format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<RationalMap, ExprError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ExprError::Parse(0, "empty expression".into()));
    }
    let mut parser = Parser { tokens, cursor: 0 };
    let value = parser.expr()?;
    if parser.cursor != parser.tokens.len() {
        return Err(ExprError::Parse(
            parser.here(),
            "trailing input after expression".into(),
        ));
    }
    Ok(RationalMap::new(value.num, value.den)?)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapFileError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Parses a map file: either a single expression line, or coefficient lines
/// `numer <c0> <c1> ...` / `denom <c0> ...` with exact Gaussian-rational
/// entries ascending by power.
pub fn parse_map_file(text: &str) -> Result<RationalMap, MapFileError> {
    let meaningful: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            (i + 1, stripped.trim())
        })
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let coefficient_form = meaningful
        .iter()
        .any(|(_, l)| l.starts_with("numer") || l.starts_with("denom"));
    if !coefficient_form {
        let expression = meaningful
            .iter()
            .map(|(_, l)| *l)
            .collect::<Vec<_>>()
            .join(" ");
        return Ok(parse_expression(&expression)?);
    }

    let mut numer: Option<Poly> = None;
    let mut denom: Option<Poly> = None;
    for (line_no, line) in meaningful {
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        let coeffs: Result<Vec<GaussianRational>, MapFileError> = rest
            .split_whitespace()
            .map(|token| {
                parse_gaussian(token)
                    .map_err(|m| MapFileError::Syntax(line_no, m))?
                    .ok_or_else(|| {
                        MapFileError::Syntax(line_no, format!("not a numeric entry: {token:?}"))
                    })
            })
            .collect();
        match keyword {
            "numer" => numer = Some(Poly::from_coeffs(coeffs?)),
            "denom" => denom = Some(Poly::from_coeffs(coeffs?)),
            other => {
                return Err(MapFileError::Syntax(
                    line_no,
                    format!("unknown keyword {other:?}"),
                ))
            }
        }
    }
    let numer = numer.ok_or_else(|| MapFileError::Syntax(0, "missing numer line".into()))?;
    let denom = denom.unwrap_or_else(Poly::one);
    Ok(RationalMap::new(numer, denom).map_err(ExprError::from)?)
}
