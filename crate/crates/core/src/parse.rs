//! The expression grammar for field elements and skew polynomials.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | postfix
//! postfix := primary ('^' ( '(' int ')' | int ))*
//! primary := int | ident | '(' expr ')'
//! ```
//!
//! `x^(k)` is the Frobenius twist and needs a field-valued operand, `x^n` is a
//! power (negative `n` only for field values). `*` is the skew product and
//! `/` divides on the right by a nonzero field value. `T` stands for `τ` and
//! `S` for `σ`.

use std::collections::HashSet;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::field::symbol::{GENERATOR, RESERVED, THETA};
use crate::field::{Fq, RationalCoeff, Symbol, TwistedVar};
use crate::matrix::SkewMatrix;
use crate::skew::{Side, SkewPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}line {line}, column {column}: {message} (at `{token}`)", context.as_ref().map(|c| format!("{c}: ")).unwrap_or_default())]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub context: Option<String>,
}

impl ParseError {
    pub fn with_context(mut self, context: impl Into<String>) -> Self {
        self.context = Some(context.into());
        self
    }
}

/// Rejects malformed and reserved identifiers.
pub fn check_identifier(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok {
        return Err(Error::Parse(ParseError {
            message: "not a valid identifier".into(),
            line: 1,
            column: 1,
            token: name.into(),
            context: None,
        }));
    }
    if RESERVED.contains(&name) {
        return Err(Error::ReservedSymbol(name.into()));
    }
    Ok(())
}

/// What an expression may refer to.
#[derive(Clone, Debug)]
pub struct Scope {
    pub fq: Fq,
    pub side: Side,
    symbols: HashSet<Symbol>,
    allow_generator: bool,
}

impl Scope {
    pub fn new(fq: Fq, side: Side, symbols: &[String]) -> Result<Self> {
        let mut set = HashSet::new();
        for s in symbols {
            check_identifier(s)?;
            if Some(s.as_str()) == fq.generator_name() {
                return Err(Error::ReservedSymbol(s.clone()));
            }
            set.insert(Symbol::new(s));
        }
        Ok(Scope {
            fq,
            side,
            symbols: set,
            allow_generator: false,
        })
    }

    /// Permits the reduction's generator symbol `c`, for reading back results.
    pub fn allowing_generator(mut self) -> Self {
        self.allow_generator = true;
        self
    }

    pub fn on_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn declare(&mut self, name: &str) -> Result<()> {
        check_identifier(name)?;
        self.symbols.insert(Symbol::new(name));
        Ok(())
    }

    pub fn parse_poly(&self, src: &str) -> Result<SkewPoly> {
        let tokens = lex(src)?;
        let mut p = Parser {
            scope: self,
            tokens,
            pos: 0,
        };
        let v = p.expr()?;
        if p.pos < p.tokens.len() {
            return Err(p.error("unexpected token"));
        }
        Ok(v)
    }

    pub fn parse_coeff(&self, src: &str) -> Result<RationalCoeff> {
        let v = self.parse_poly(src)?;
        v.as_scalar().ok_or_else(|| {
            Error::Parse(ParseError {
                message: format!("expected a field element, found a polynomial in {}", self.side.letter()),
                line: 1,
                column: 1,
                token: src.into(),
                context: None,
            })
        })
    }

    /// Parses a row-major grid of expressions.
    pub fn parse_matrix(&self, rows: &[Vec<String>]) -> Result<SkewMatrix> {
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, src) in row.iter().enumerate() {
                r.push(self.parse_poly(src).map_err(|e| match e {
                    Error::Parse(pe) => Error::Parse(pe.with_context(format!("entry ({}, {})", i + 1, j + 1))),
                    other => other,
                })?);
            }
            out.push(r);
        }
        SkewMatrix::from_rows(self.fq, self.side, out)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    text: String,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start_col = col;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(chars[start..i].iter().collect())
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^()".contains(c) {
            i += 1;
            Tok::Op(c)
        } else {
            return Err(Error::Parse(ParseError {
                message: "unexpected character".into(),
                line,
                column: col,
                token: c.to_string(),
                context: None,
            }));
        };
        col += i - start;
        out.push(Token {
            text: chars[start..i].iter().collect(),
            tok,
            line,
            column: start_col,
        });
    }
    Ok(out)
}

struct Parser<'a> {
    scope: &'a Scope,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, at: usize, message: &str) -> Error {
        let (line, column, token) = match self.tokens.get(at) {
            Some(t) => (t.line, t.column, t.text.clone()),
            None => {
                let last = self.tokens.last();
                (
                    last.map(|t| t.line).unwrap_or(1),
                    last.map(|t| t.column + t.text.len()).unwrap_or(1),
                    "end of input".into(),
                )
            }
        };
        Error::Parse(ParseError {
            message: message.into(),
            line,
            column,
            token,
            context: None,
        })
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.tokens.get(self.pos), Some(Token { tok: Tok::Op(o), .. }) if *o == c)
    }

    fn expect_op(&mut self, c: char) -> Result<()> {
        if self.peek_op(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<SkewPoly> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = acc.add(&self.term()?)?;
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SkewPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                acc = acc.mul(&self.unary()?)?;
            } else if self.peek_op('/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.unary()?;
                let Some(d) = d.as_scalar() else {
                    return Err(self.error_at(at, "can only divide by a field element"));
                };
                if d.is_zero() {
                    return Err(self.error_at(at, "division by zero"));
                }
                acc = acc.scale_right(&d.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SkewPoly> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.postfix()
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.peek_op('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.tokens.get(self.pos) {
            Some(Token { tok: Tok::Int(s), .. }) => {
                let v: i64 = s.parse().map_err(|_| self.error("integer out of range"))?;
                if v > i32::MAX as i64 {
                    return Err(self.error("integer out of range"));
                }
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn postfix(&mut self) -> Result<SkewPoly> {
        let start = self.pos;
        let mut v = self.primary()?;
        while self.peek_op('^') {
            self.pos += 1;
            if self.peek_op('(') {
                self.pos += 1;
                let k = self.signed_int()?;
                self.expect_op(')')?;
                let Some(x) = v.as_scalar() else {
                    return Err(self.error_at(start, "a twist applies to field elements only"));
                };
                v = SkewPoly::constant(x.twist(k as i32), self.scope.side);
            } else {
                let at = self.pos;
                let n = self.signed_int()?;
                if n < 0 {
                    let Some(x) = v.as_scalar() else {
                        return Err(self.error_at(at, "negative powers need a field element"));
                    };
                    if x.is_zero() {
                        return Err(self.error_at(at, "division by zero"));
                    }
                    v = SkewPoly::constant(x.pow(n)?, self.scope.side);
                } else if let Some(x) = v.as_scalar() {
                    v = SkewPoly::constant(x.pow(n)?, self.scope.side);
                } else {
                    let mut acc = SkewPoly::one(self.scope.fq, self.scope.side);
                    for _ in 0..n {
                        acc = acc.mul(&v)?;
                    }
                    v = acc;
                }
            }
        }
        Ok(v)
    }

    fn primary(&mut self) -> Result<SkewPoly> {
        let scope = self.scope;
        let fq = scope.fq;
        let side = scope.side;
        let Some(tok) = self.tokens.get(self.pos).cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok.tok {
            Tok::Int(s) => {
                let p = fq.characteristic();
                let v = s.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                self.pos += 1;
                Ok(SkewPoly::constant(RationalCoeff::constant(fq, v), side))
            }
            Tok::Ident(name) => {
                let v = match name.as_str() {
                    THETA => SkewPoly::constant(RationalCoeff::theta(fq, 0), side),
                    "T" | "S" => {
                        if name != side.letter() {
                            return Err(self.error(&format!("`{name}` does not belong to the {side} ring")));
                        }
                        SkewPoly::x(fq, side)
                    }
                    GENERATOR => {
                        if !scope.allow_generator {
                            return Err(Error::ReservedSymbol(GENERATOR.into()));
                        }
                        SkewPoly::constant(RationalCoeff::var(fq, TwistedVar::new(Symbol::generator(), 0)), side)
                    }
                    n if Some(n) == fq.generator_name().or((fq.degree() > 1).then_some("g")) => {
                        SkewPoly::constant(RationalCoeff::constant(fq, fq.generator().expect("extension field")), side)
                    }
                    n => {
                        let sym = Symbol::new(n);
                        if !scope.symbols.contains(&sym) {
                            return Err(self.error("undeclared symbol"));
                        }
                        SkewPoly::constant(RationalCoeff::var(fq, TwistedVar::new(sym, 0)), side)
                    }
                };
                self.pos += 1;
                Ok(v)
            }
            Tok::Op('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect_op(')')?;
                Ok(v)
            }
            Tok::Op(_) => Err(self.error("unexpected operator")),
        }
    }
}
