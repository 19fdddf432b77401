//! Text grammars: divisor expressions, curve names, boundary symbols, and
//! the dual-graph tree format.
//!
//! All parsers share one lexer and report failures as [`Error::Parse`] with a
//! byte offset into the input.  Whitespace is insignificant everywhere; the
//! Unicode minus sign U+2212 is accepted alongside the ASCII hyphen.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::boundary::BoundaryIndex;
use crate::divisor::DivisorClass;
use crate::fcurve::FCurve;
use crate::graphs::MarkedTree;
use crate::rational::Q;
use crate::symmetric::{canonical_and_psi, CurveClass, SymmetricDivisor};
use crate::{Error, Result};

/// A curve given on the command line: either one explicit vital curve or a
/// numerical class.
#[derive(Clone, Debug)]
pub enum ParsedCurve {
    /// A specific curve `F{..}{..}{..}{..}`, usable against any divisor.
    Explicit(FCurve),
    /// A class (`F1,1,2,3`, `C4`, `A`) defined against symmetric divisors.
    Class(CurveClass),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum TokKind {
    Plus,
    Minus,
    Star,
    Slash,
    Colon,
    Semi,
    Comma,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
    End,
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    pos: usize,
}

fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let kind = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '+' => TokKind::Plus,
            '-' | '\u{2212}' => TokKind::Minus,
            '*' => TokKind::Star,
            '/' => TokKind::Slash,
            ':' => TokKind::Colon,
            ';' => TokKind::Semi,
            ',' => TokKind::Comma,
            '{' => TokKind::LBrace,
            '}' => TokKind::RBrace,
            '[' => TokKind::LBracket,
            ']' => TokKind::RBracket,
            '(' => TokKind::LParen,
            ')' => TokKind::RParen,
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok {
                    kind: TokKind::Int(digits.parse().expect("ascii digits")),
                    pos,
                });
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok {
                    kind: TokKind::Ident(name),
                    pos,
                });
                continue;
            }
            other => return parse_err(pos, format!("unexpected character {other:?}")),
        };
        chars.next();
        toks.push(Tok { kind, pos });
    }
    toks.push(Tok {
        kind: TokKind::End,
        pos: input.len(),
    });
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    at: usize,
}

impl Parser {
    fn of(input: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(input)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at]
    }

    fn next(&mut self) -> Tok {
        let tok = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        tok
    }

    fn eat(&mut self, kind: &TokKind) -> bool {
        if &self.peek().kind == kind {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokKind, what: &str) -> Result<Tok> {
        if self.peek().kind == kind {
            Ok(self.next())
        } else {
            parse_err(self.peek().pos, format!("expected {what}"))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.peek().kind == TokKind::End {
            Ok(())
        } else {
            parse_err(self.peek().pos, "trailing input")
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(BigInt, usize)> {
        let pos = self.peek().pos;
        match self.next().kind {
            TokKind::Int(v) => Ok((v, pos)),
            _ => parse_err(pos, format!("expected {what}")),
        }
    }

    fn expect_small_int(&mut self, what: &str) -> Result<(u32, usize)> {
        let (v, pos) = self.expect_int(what)?;
        match v.to_u32() {
            Some(small) => Ok((small, pos)),
            None => parse_err(pos, format!("{what} out of range")),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize)> {
        let pos = self.peek().pos;
        match self.next().kind {
            TokKind::Ident(name) => Ok((name, pos)),
            _ => parse_err(pos, format!("expected {what}")),
        }
    }

    /// `p` or `p/q` with positive `q`.
    fn rational(&mut self) -> Result<Q> {
        let (numer, _) = self.expect_int("a number")?;
        if self.eat(&TokKind::Slash) {
            let (denom, pos) = self.expect_int("a denominator")?;
            if denom.is_zero() {
                return parse_err(pos, "denominator must be nonzero");
            }
            Ok(Q::new(numer, denom))
        } else {
            Ok(Q::from_integer(numer))
        }
    }

    /// Brace-delimited marking set: `{i, j, ...}`.
    fn brace_set(&mut self) -> Result<Vec<u8>> {
        self.expect(TokKind::LBrace, "'{'")?;
        let mut elems = Vec::new();
        if !self.eat(&TokKind::RBrace) {
            loop {
                let (v, pos) = self.expect_small_int("a marking")?;
                let Ok(small) = u8::try_from(v) else {
                    return parse_err(pos, "marking out of range");
                };
                elems.push(small);
                if self.eat(&TokKind::RBrace) {
                    break;
                }
                self.expect(TokKind::Comma, "',' or '}'")?;
            }
        }
        Ok(elems)
    }
}

/// Parses a divisor expression such as `psi - 4*K` or `5*B2 + 3*B{1,4}`.
///
/// The grammar is a signed sum of terms `c * SYM` (or a bare `SYM`), where
/// `SYM` is one of `B{i,j,...}` (an individual boundary class), `B2` ..
/// `B⌊n/2⌋` (a symmetric boundary sum), `psi`, `psi_i`, or `K`.  A numeric
/// term without a symbol is only allowed when it is `0`.
pub fn parse_divisor(n: u8, input: &str) -> Result<DivisorClass> {
    let mut p = Parser::of(input)?;
    let mut total = DivisorClass::zero(n)?;
    let mut negate = p.eat(&TokKind::Minus);
    if !negate {
        p.eat(&TokKind::Plus);
    }
    loop {
        let term = divisor_term(&mut p, n)?;
        let sign = if negate { crate::rational::q(-1) } else { crate::rational::q(1) };
        total = total.checked_add(&term.scaled(&sign))?;
        match p.next().kind {
            TokKind::Plus => negate = false,
            TokKind::Minus => negate = true,
            TokKind::End => break,
            _ => return parse_err(p.toks[p.at - 1].pos, "expected '+', '-', or end of input"),
        }
    }
    Ok(total)
}

fn divisor_term(p: &mut Parser, n: u8) -> Result<DivisorClass> {
    match p.peek().kind {
        TokKind::Int(_) => {
            let pos = p.peek().pos;
            let coeff = p.rational()?;
            if p.eat(&TokKind::Star) {
                Ok(divisor_symbol(p, n)?.scaled(&coeff))
            } else if coeff.is_zero() {
                DivisorClass::zero(n)
            } else {
                parse_err(pos, "a bare numeric term must be 0")
            }
        }
        TokKind::Ident(_) => divisor_symbol(p, n),
        _ => parse_err(p.peek().pos, "expected a term"),
    }
}

fn divisor_symbol(p: &mut Parser, n: u8) -> Result<DivisorClass> {
    let (name, pos) = p.expect_ident("a symbol")?;
    match name.as_str() {
        "K" => Ok(canonical_and_psi(n)?.0.expand()),
        "psi" => Ok(canonical_and_psi(n)?.1.expand()),
        "B" => {
            let elems = p.brace_set()?;
            Ok(DivisorClass::boundary(BoundaryIndex::new(n, elems)?))
        }
        _ => {
            if let Some(rest) = name.strip_prefix("psi_") {
                let i: u8 = rest
                    .parse()
                    .map_err(|_| Error::Parse {
                        pos,
                        msg: format!("bad psi index {rest:?}"),
                    })?;
                return DivisorClass::psi(n, i);
            }
            if let Some(rest) = name.strip_prefix('B') {
                if let Ok(k) = rest.parse::<u8>() {
                    return symmetric_sum(n, k, pos);
                }
            }
            parse_err(pos, format!("unknown symbol {name:?}"))
        }
    }
}

/// The symmetric boundary sum `Bk`, expanded over canonical classes.
fn symmetric_sum(n: u8, k: u8, pos: usize) -> Result<DivisorClass> {
    if k < 2 || k > n / 2 {
        return parse_err(
            pos,
            format!("symmetric class B{k} out of range for n = {n} (use B2..B{})", n / 2),
        );
    }
    let mut coeffs = vec![Q::zero(); usize::from(n / 2) - 1];
    coeffs[usize::from(k) - 2] = crate::rational::q(1);
    Ok(SymmetricDivisor::new(n, coeffs)?.expand())
}

/// Parses a strict boundary symbol `B{i,j,...}` into its canonical class.
pub fn parse_boundary_symbol(n: u8, input: &str) -> Result<BoundaryIndex> {
    let mut p = Parser::of(input)?;
    let (name, pos) = p.expect_ident("'B'")?;
    if name != "B" {
        return parse_err(pos, "expected a boundary symbol B{i,j,...}");
    }
    let elems = p.brace_set()?;
    p.expect_end()?;
    BoundaryIndex::new(n, elems)
}

/// Parses a comma-separated list of boundary symbols, e.g. `B{1,2}, B{3,4,5}`.
pub fn parse_forbidden_list(n: u8, input: &str) -> Result<BTreeSet<BoundaryIndex>> {
    let mut p = Parser::of(input)?;
    let mut set = BTreeSet::new();
    if p.peek().kind == TokKind::End {
        return Ok(set);
    }
    loop {
        let (name, pos) = p.expect_ident("a boundary symbol")?;
        if name != "B" {
            return parse_err(pos, "expected a boundary symbol B{i,j,...}");
        }
        set.insert(BoundaryIndex::new(n, p.brace_set()?)?);
        if p.peek().kind == TokKind::End {
            return Ok(set);
        }
        p.expect(TokKind::Comma, "',' between boundary symbols")?;
    }
}

/// Parses a curve name.
///
/// Accepted forms: an explicit curve `F{1}{2}{3}{4,5,6,7}`, a numerical type
/// `F1,1,1,4`, a sweeping class `C4`, or the rigid class `A` (n = 7 only).
pub fn parse_curve(n: u8, input: &str) -> Result<ParsedCurve> {
    let trimmed = input.trim();
    if trimmed == "A" {
        return Ok(ParsedCurve::Class(CurveClass::curve_a(n)?));
    }
    if let Some(rest) = trimmed.strip_prefix('C') {
        let j: u8 = rest.trim().parse().map_err(|_| Error::Parse {
            pos: 1,
            msg: format!("bad sweeping index {rest:?}"),
        })?;
        return Ok(ParsedCurve::Class(CurveClass::sweeping(n, j)?));
    }
    if let Some(rest) = trimmed.strip_prefix('F') {
        if rest.trim_start().starts_with('{') {
            let mut p = Parser::of(rest)?;
            let mut blocks = Vec::with_capacity(4);
            for _ in 0..4 {
                blocks.push(p.brace_set()?);
            }
            p.expect_end()?;
            let refs: [&[u8]; 4] = [&blocks[0], &blocks[1], &blocks[2], &blocks[3]];
            return Ok(ParsedCurve::Explicit(FCurve::new(n, refs)?));
        }
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 4 {
            return parse_err(1, "a curve type needs exactly 4 block sizes");
        }
        let mut sizes = [0u8; 4];
        for (slot, part) in sizes.iter_mut().zip(&parts) {
            *slot = part.trim().parse().map_err(|_| Error::Parse {
                pos: 1,
                msg: format!("bad block size {:?}", part.trim()),
            })?;
        }
        return Ok(ParsedCurve::Class(CurveClass::fcurve_type(n, sizes)?));
    }
    parse_err(0, format!("unknown curve {trimmed:?}"))
}

/// Parses the textual tree format:
///
/// ```text
/// tree{ v1: [1,2,3]; v2: [4*2,5]; edges: (v1,v2) }
/// ```
///
/// Each vertex clause lists the markings carried by that vertex; a `*k`
/// suffix gives a marking multiplicity (default 1).  The `edges` clause may
/// be empty or absent for a single-vertex tree.
pub fn parse_tree(input: &str) -> Result<MarkedTree> {
    let mut p = Parser::of(input)?;
    let (kw, pos) = p.expect_ident("'tree'")?;
    if kw != "tree" {
        return parse_err(pos, "expected 'tree'");
    }
    p.expect(TokKind::LBrace, "'{'")?;
    let mut vertices: Vec<String> = Vec::new();
    let mut legs: Vec<(u32, String, u32)> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    loop {
        if p.eat(&TokKind::RBrace) {
            break;
        }
        let (name, pos) = p.expect_ident("a vertex name or 'edges'")?;
        p.expect(TokKind::Colon, "':'")?;
        if name == "edges" {
            while p.peek().kind == TokKind::LParen {
                p.next();
                let (from, _) = p.expect_ident("a vertex name")?;
                p.expect(TokKind::Comma, "','")?;
                let (to, _) = p.expect_ident("a vertex name")?;
                p.expect(TokKind::RParen, "')'")?;
                edges.push((from, to));
                if !p.eat(&TokKind::Comma) {
                    break;
                }
            }
        } else {
            if vertices.contains(&name) {
                return parse_err(pos, format!("vertex {name:?} declared twice"));
            }
            p.expect(TokKind::LBracket, "'['")?;
            if !p.eat(&TokKind::RBracket) {
                loop {
                    let (label, _) = p.expect_small_int("a marking label")?;
                    let mult = if p.eat(&TokKind::Star) {
                        p.expect_small_int("a multiplicity")?.0
                    } else {
                        1
                    };
                    legs.push((label, name.clone(), mult));
                    if p.eat(&TokKind::RBracket) {
                        break;
                    }
                    p.expect(TokKind::Comma, "',' or ']'")?;
                }
            }
            vertices.push(name);
        }
        if !p.eat(&TokKind::Semi) {
            p.expect(TokKind::RBrace, "';' or '}'")?;
            break;
        }
    }
    p.expect_end()?;
    MarkedTree::new(vertices, edges, legs)
}
