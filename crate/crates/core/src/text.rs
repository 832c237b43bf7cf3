//! Textual polynomial format.
//!
//! ```text
//! poly  := sign? term (('+' | '-') term)*
//! term  := coeff? ('*'? var ('^' uint)?)*
//! coeff := uint ('/' uint)?
//! ```
//!
//! Whitespace between tokens is ignored. Repeated variables in one term
//! multiply. Printing emits terms leading-first in the canonical order, so
//! `parse_poly(&print_poly(f, vars), vars) == f`.

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("duplicate variable name {0:?}")]
    Duplicate(String),
}

/// Ordered variable names; position `l` names `t_{l+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSymbolTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSymbolTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, SymbolError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(SymbolError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(SymbolError::Duplicate(name.clone()));
            }
        }
        Ok(VarSymbolTable { names, index })
    }

    /// `t1, ..., tn`.
    pub fn standard(n: usize) -> Self {
        VarSymbolTable::new((1..=n).map(|i| format!("t{i}"))).expect("standard names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn name(&self, i: usize) -> String {
        self.names
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("t{}", i + 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Num(&'a str),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<(Tok<'a>, usize)>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            peeked: None,
        }
    }

    fn lex(&mut self) -> Result<(Tok<'a>, usize), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((Tok::End, start));
        };
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((tok, start));
        }
        if b.is_ascii_digit() {
            let len = bytes[start..]
                .iter()
                .take_while(|c| c.is_ascii_digit())
                .count();
            self.pos += len;
            return Ok((Tok::Num(&self.src[start..start + len]), start));
        }
        if b.is_ascii_alphabetic() {
            let len = bytes[start..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == b'_')
                .count();
            self.pos += len;
            return Ok((Tok::Ident(&self.src[start..start + len]), start));
        }
        let ch = self.src[start..].chars().next().expect("in bounds");
        Err(ParseError::new(
            start,
            format!("unexpected character {ch:?}"),
        ))
    }

    fn peek(&mut self) -> Result<(Tok<'a>, usize), ParseError> {
        if let Some(t) = self.peeked {
            return Ok(t);
        }
        let t = self.lex()?;
        self.peeked = Some(t);
        Ok(t)
    }

    fn next(&mut self) -> Result<(Tok<'a>, usize), ParseError> {
        let t = self.peek()?;
        self.peeked = None;
        Ok(t)
    }
}

fn describe(tok: Tok<'_>) -> String {
    match tok {
        Tok::Num(s) => format!("number {s}"),
        Tok::Ident(s) => format!("name {s}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Slash => "'/'".into(),
        Tok::End => "end of input".into(),
    }
}

struct Parser<'a, 'v> {
    lexer: Lexer<'a>,
    vars: &'v VarSymbolTable,
}

impl<'a, 'v> Parser<'a, 'v> {
    fn coefficient(&mut self, numer: &str) -> Result<Rational, ParseError> {
        let numer: BigInt = numer.parse().expect("digit run");
        if self.lexer.peek()?.0 != Tok::Slash {
            return Ok(Rational::from_integer(numer));
        }
        self.lexer.next()?;
        match self.lexer.next()? {
            (Tok::Num(d), at) => {
                let denom: BigInt = d.parse().expect("digit run");
                Rational::new(numer, denom).ok_or_else(|| ParseError::new(at, "zero denominator"))
            }
            (tok, at) => Err(ParseError::new(
                at,
                format!("expected denominator, found {}", describe(tok)),
            )),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        match self.lexer.next()? {
            (Tok::Num(e), at) => e
                .parse::<u32>()
                .map_err(|_| ParseError::new(at, format!("bad exponent {e}: too large"))),
            (tok, at) => Err(ParseError::new(
                at,
                format!(
                    "bad exponent: expected nonnegative integer, found {}",
                    describe(tok)
                ),
            )),
        }
    }

    fn variable(&mut self, name: &str, at: usize, exps: &mut [u32]) -> Result<(), ParseError> {
        let index = self
            .vars
            .index_of(name)
            .ok_or_else(|| ParseError::new(at, format!("unknown variable {name:?}")))?;
        let power = if self.lexer.peek()?.0 == Tok::Caret {
            self.lexer.next()?;
            self.exponent()?
        } else {
            1
        };
        exps[index] = exps[index]
            .checked_add(power)
            .ok_or_else(|| ParseError::new(at, "bad exponent: total exceeds range"))?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Rational, Monomial), ParseError> {
        let (first, start) = self.lexer.peek()?;
        let mut coeff = Rational::one();
        let mut has_content = false;
        if let Tok::Num(numer) = first {
            self.lexer.next()?;
            coeff = self.coefficient(numer)?;
            has_content = true;
        }
        let mut exps = vec![0u32; self.vars.len()];
        loop {
            match self.lexer.peek()? {
                (Tok::Star, star_at) => {
                    if !has_content {
                        return Err(ParseError::new(star_at, "empty term before '*'"));
                    }
                    self.lexer.next()?;
                    match self.lexer.next()? {
                        (Tok::Ident(name), at) => self.variable(name, at, &mut exps)?,
                        (tok, at) => {
                            return Err(ParseError::new(
                                at,
                                format!("expected variable after '*', found {}", describe(tok)),
                            ))
                        }
                    }
                }
                (Tok::Ident(name), at) => {
                    self.lexer.next()?;
                    self.variable(name, at, &mut exps)?;
                }
                _ => break,
            }
            has_content = true;
        }
        if !has_content {
            return Err(ParseError::new(
                start,
                format!("empty term: found {}", describe(first)),
            ));
        }
        Ok((coeff, Monomial::new(exps)))
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = match self.lexer.peek()?.0 {
            Tok::Minus => {
                self.lexer.next()?;
                true
            }
            Tok::Plus => {
                self.lexer.next()?;
                false
            }
            _ => false,
        };
        let mut acc: Vec<(Monomial, Rational)> = Vec::new();
        loop {
            let (c, mono) = self.term()?;
            acc.push((mono, if negate { c.neg() } else { c }));
            match self.lexer.next()? {
                (Tok::End, _) => break,
                (Tok::Plus, _) => negate = false,
                (Tok::Minus, _) => negate = true,
                (tok, at) => {
                    return Err(ParseError::new(
                        at,
                        format!("expected '+', '-' or end of input, found {}", describe(tok)),
                    ))
                }
            }
        }
        Ok(Polynomial::from_terms(self.vars.len(), acc).expect("monomials sized to table"))
    }
}

pub fn parse_poly(text: &str, vars: &VarSymbolTable) -> Result<Polynomial, ParseError> {
    Parser {
        lexer: Lexer::new(text),
        vars,
    }
    .poly()
}

fn render_term(c: &Rational, mono: &Monomial, vars: &VarSymbolTable) -> String {
    let factors: Vec<String> = mono
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars.name(i)
            } else {
                format!("{}^{e}", vars.name(i))
            }
        })
        .collect();
    if factors.is_empty() {
        c.to_string()
    } else if c.is_one() {
        factors.join("*")
    } else {
        format!("{c}*{}", factors.join("*"))
    }
}

/// Canonical rendering, leading term first; the zero polynomial prints as `0`.
pub fn print_poly(f: &Polynomial, vars: &VarSymbolTable) -> String {
    let mut out = String::new();
    for (i, (mono, c)) in f.terms().enumerate() {
        let body = render_term(&c.abs(), mono, vars);
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn print_poly_default(f: &Polynomial) -> String {
    print_poly(f, &VarSymbolTable::standard(f.ambient()))
}
