//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := ident | number | '(' expr ')'
//! number := int ('/' int)?
//! ```
//!
//! Juxtaposition is not multiplication: `2u` and `u v` are rejected.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{Polynomial, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownIdentifier(String),
    ExponentOverflow,
    ZeroDenominator,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "unexpected {found}, expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "unexpected end of input, expected {expected}"),
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier {name:?}"),
            ParseErrorKind::ExponentOverflow => write!(f, "exponent overflow"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<(Vec<(Tok, Pos)>, Pos), ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::UnexpectedChar(c),
            });
        }
        column += i - start;
    }
    Ok((out, Pos { line, column }))
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    end: Pos,
    at: usize,
    ring: &'a Arc<RingSpec>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let p = self.pos();
        ParseError {
            line: p.line,
            column: p.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken {
                found: t.describe(),
                expected,
            }),
            None => self.err(ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            Some(Tok::Plus) => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            let rhs = self.factor()?;
            if !exponents_fit(&acc, &rhs, 1) {
                return Err(ParseError {
                    line: pos.line,
                    column: pos.column,
                    kind: ParseErrorKind::ExponentOverflow,
                });
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let e = match self.peek() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(n).map_err(|_| self.err(ParseErrorKind::ExponentOverflow))?;
                    self.at += 1;
                    e
                }
                _ => return Err(self.unexpected("exponent")),
            };
            let one = Polynomial::one(self.ring);
            if e > 1 && !exponents_fit(&one, &base, e) {
                return Err(self.err(ParseErrorKind::ExponentOverflow));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let field = self.ring.field();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| self.err(ParseErrorKind::UnknownIdentifier(name.clone())))?;
                self.at += 1;
                Ok(Polynomial::var(self.ring, idx))
            }
            Some(Tok::Int(num)) => {
                self.at += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.at += 1;
                    let den = match self.peek() {
                        Some(Tok::Int(d)) => d.clone(),
                        _ => return Err(self.unexpected("denominator")),
                    };
                    let c = field
                        .from_ratio(&num, &den)
                        .ok_or_else(|| self.err(ParseErrorKind::ZeroDenominator))?;
                    self.at += 1;
                    return Ok(Polynomial::constant(self.ring, c));
                }
                Ok(Polynomial::constant(self.ring, field.from_bigint(&num)))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("')'")),
                }
            }
            _ => Err(self.unexpected("identifier, number or '('")),
        }
    }
}

/// Whether `a * b^e` keeps every exponent within `u32`.
fn exponents_fit(a: &Polynomial, b: &Polynomial, e: u32) -> bool {
    let n = a.ring().nvars();
    let max_exps = |p: &Polynomial| -> Vec<u64> {
        let mut m = vec![0u64; n];
        for (mono, _) in p.terms() {
            for (slot, &x) in m.iter_mut().zip(mono.exps()) {
                *slot = (*slot).max(x as u64);
            }
        }
        m
    };
    let max_deg = |p: &Polynomial| p.total_degree().unwrap_or(0) as u64;
    let fits_vars = max_exps(a)
        .iter()
        .zip(max_exps(b))
        .all(|(x, y)| x + y * e as u64 <= u32::MAX as u64);
    fits_vars && max_deg(a) + max_deg(b) * e as u64 <= u32::MAX as u64
}

/// Parses `src` as an element of `ring`.
pub fn parse_poly(src: &str, ring: &Arc<RingSpec>) -> Result<Polynomial, ParseError> {
    let (toks, end) = lex(src)?;
    let mut p = Parser { toks, end, at: 0, ring };
    let poly = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(poly)
}

/// Comma-separated polynomials, e.g. ideal generators `"u, v, u + v"`. Error positions
/// refer to the whole input.
pub fn parse_poly_list(src: &str, ring: &Arc<RingSpec>) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    for piece in src.split(',') {
        out.push(parse_poly(piece, ring).map_err(|mut e| {
            if e.line == 1 {
                e.column += column - 1;
            }
            e.line += line - 1;
            e
        })?);
        for c in piece.chars().chain([',']) {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
    }
    Ok(out)
}

/// Canonical text form; `parse_poly(print_poly(p)) == p`.
pub fn print_poly(p: &Polynomial) -> String {
    p.to_string()
}
