//! Text format for ring elements and matrices.
//!
//! Grammar (whitespace insignificant inside an expression):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := "-" unary | primary
//! primary := NUMBER | IDENT | "(" expr ")" | "[" expr ("," expr)+ "]"
//! NUMBER  := DIGITS | DIGITS "/" DIGITS
//! ```
//!
//! `[x, y, z]` is the left-normed commutator `[[x, y], z]`. Products keep the
//! written operand order. There is no division between ring elements; `p/q`
//! is only a rational literal.
//!
//! A source document starts with a ring declaration followed by a matrix
//! whose rows are separated by newlines or `;` and entries by `,`:
//!
//! ```text
//! # generic 2x2 matrix
//! ring free a, b, c, d
//! a, b
//! c, d
//! ```
//!
//! Other headers are `ring grassmann K` and `ring rational`. `#` starts a
//! comment running to the end of the line.
//!
//! Polynomials in `t` print powers as `t^k`. That spelling is a single
//! identifier known only to the polynomial ring; there is no general
//! exponent operator.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::freealg::{FreeAlgebra, NcPoly};
use crate::grassmann::{Grassmann, GrassmannElem};
use crate::matrix::RingMatrix;
use crate::ring::{left_normed, Rational, Rationals, Ring};
use crate::tpoly::{PolyRing, TPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undeclared identifier `{0}`")]
    Undeclared(String),
    #[error("`{name}` exceeds the rank {rank} of the Grassmann algebra")]
    RankViolation { name: String, rank: u32 },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, found: usize, expected: usize },
    #[error("matrix is not square: {rows} rows of {cols} entries")]
    NonSquare { rows: usize, cols: usize },
    #[error("bad ring declaration: {0}")]
    BadHeader(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

type PResult<T> = std::result::Result<T, ParseError>;

/// A ring whose elements can be read from and written to text.
pub trait TextRing: Ring {
    fn lookup(&self, name: &str) -> std::result::Result<Self::Elem, ParseErrorKind>;

    /// Terms in canonical print order as `(coefficient, monomial)`; the unit
    /// monomial is the empty string.
    fn text_terms(&self, e: &Self::Elem) -> Vec<(Rational, String)>;
}

impl<R: TextRing + ?Sized> TextRing for &R {
    fn lookup(&self, name: &str) -> std::result::Result<Self::Elem, ParseErrorKind> {
        (**self).lookup(name)
    }
    fn text_terms(&self, e: &Self::Elem) -> Vec<(Rational, String)> {
        (**self).text_terms(e)
    }
}

impl TextRing for Rationals {
    fn lookup(&self, name: &str) -> std::result::Result<Rational, ParseErrorKind> {
        Err(ParseErrorKind::Undeclared(name.to_string()))
    }

    fn text_terms(&self, e: &Rational) -> Vec<(Rational, String)> {
        if e.is_zero() {
            vec![]
        } else {
            vec![(e.clone(), String::new())]
        }
    }
}

impl TextRing for FreeAlgebra {
    fn lookup(&self, name: &str) -> std::result::Result<NcPoly, ParseErrorKind> {
        self.id_of(name)
            .and_then(|id| self.generator(id).ok())
            .ok_or_else(|| ParseErrorKind::Undeclared(name.to_string()))
    }

    fn text_terms(&self, e: &NcPoly) -> Vec<(Rational, String)> {
        e.terms()
            .map(|(w, c)| {
                let mono: Vec<&str> = w.letters().iter().map(|&g| self.name(g).unwrap_or("?")).collect();
                (c.clone(), mono.join("*"))
            })
            .collect()
    }
}

impl TextRing for Grassmann {
    fn lookup(&self, name: &str) -> std::result::Result<GrassmannElem, ParseErrorKind> {
        let index = name
            .strip_prefix('v')
            .filter(|d| !d.is_empty() && !d.starts_with('0') && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<u32>().ok())
            .ok_or_else(|| ParseErrorKind::Undeclared(name.to_string()))?;
        self.generator(index).map_err(|_| ParseErrorKind::RankViolation {
            name: name.to_string(),
            rank: self.rank(),
        })
    }

    fn text_terms(&self, e: &GrassmannElem) -> Vec<(Rational, String)> {
        e.terms()
            .map(|(b, c)| {
                let mono: Vec<String> = b.indices().iter().map(|i| format!("v{i}")).collect();
                (c.clone(), mono.join("*"))
            })
            .collect()
    }
}

/// Polynomials print in descending powers of `t`; a coefficient with more
/// than one term is parenthesised.
impl<R: TextRing> TextRing for PolyRing<R> {
    fn lookup(&self, name: &str) -> std::result::Result<TPoly<R::Elem>, ParseErrorKind> {
        if name == "t" {
            Ok(self.t())
        } else if let Some(k) = name.strip_prefix("t^").and_then(|k| k.parse().ok()) {
            Ok(self.monomial(self.base().one(), k))
        } else {
            self.base().lookup(name).map(|x| self.constant(x))
        }
    }

    fn text_terms(&self, e: &TPoly<R::Elem>) -> Vec<(Rational, String)> {
        let mut out = Vec::new();
        for (i, c) in e.coeffs().iter().enumerate().rev() {
            let power = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let join = |m: &str| match (m.is_empty(), power.is_empty()) {
                (true, _) => power.clone(),
                (false, true) => m.to_string(),
                (false, false) => format!("{m}*{power}"),
            };
            let terms = self.base().text_terms(c);
            match terms.as_slice() {
                [] => {}
                [(q, m)] => out.push((q.clone(), join(m))),
                _ => out.push((Rational::one(), join(&format!("({})", format_element(self.base(), c))))),
            }
        }
        out
    }
}

/// Canonical text of an element: terms in canonical order, explicit
/// coefficients, `*` between factors, `0` for zero.
pub fn format_element<R: TextRing>(ring: &R, e: &R::Elem) -> String {
    let terms = ring.text_terms(e);
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (q, mono)) in terms.iter().enumerate() {
        let abs = q.abs();
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono.clone()
        } else {
            format!("{abs}*{mono}")
        };
        match (k == 0, q.is_negative()) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// Rows on separate lines, entries separated by `, `.
pub fn format_matrix<R: TextRing>(ring: &R, a: &RingMatrix<R::Elem>) -> String {
    a.rows()
        .map(|row| {
            row.iter()
                .map(|e| format_element(ring, e))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Single-line form with rows separated by `; `.
pub fn format_matrix_inline<R: TextRing>(ring: &R, a: &RingMatrix<R::Elem>) -> String {
    format_matrix(ring, a).replace('\n', "; ")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Newline,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    err(line, col, ParseErrorKind::Syntax(msg.into()))
}

/// Newlines become tokens only outside parentheses and brackets.
fn lex(src: &str, first_line: usize) -> PResult<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, first_line, 1);
    let mut depth = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let single = |tok| Token { tok, line: tl, col: tc };
        match c {
            '\n' => {
                if depth == 0 {
                    out.push(single(Tok::Newline));
                }
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_whitespace() => {}
            '+' => out.push(single(Tok::Plus)),
            '-' => out.push(single(Tok::Minus)),
            '*' => out.push(single(Tok::Star)),
            ',' => out.push(single(Tok::Comma)),
            ';' => out.push(single(Tok::Semi)),
            '(' | '[' => {
                depth += 1;
                out.push(single(if c == '(' { Tok::LParen } else { Tok::LBracket }));
            }
            ')' | ']' => {
                depth = depth.saturating_sub(1);
                out.push(single(if c == ')' { Tok::RParen } else { Tok::RBracket }));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
                let mut value = Rational::from_integer(num);
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    let dstart = i + 1;
                    i = dstart;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den: BigInt = chars[dstart..i].iter().collect::<String>().parse().unwrap();
                    if den.is_zero() {
                        return Err(syntax(tl, tc, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                } else if i < chars.len() && chars[i] == '/' {
                    return Err(syntax(
                        line,
                        col + (i - start),
                        "`/` is only allowed inside a rational literal p/q",
                    ));
                }
                col += i - start;
                out.push(Token {
                    tok: Tok::Num(value),
                    line: tl,
                    col: tc,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                if chars.get(i) == Some(&'^') && chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                col += i - start;
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: tl,
                    col: tc,
                });
                continue;
            }
            other => return Err(syntax(tl, tc, format!("unexpected character `{other}`"))),
        }
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'r, R: TextRing> {
    ring: &'r R,
    toks: Vec<Token>,
    pos: usize,
}

impl<'r, R: TextRing> Parser<'r, R> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        let t = self.bump();
        if t.tok == tok {
            Ok(())
        } else {
            Err(syntax(t.line, t.col, format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> PResult<R::Elem> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.ring.add(&acc, &rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.ring.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<R::Elem> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            acc = self.ring.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<R::Elem> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            let x = self.unary()?;
            return Ok(self.ring.neg(&x));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<R::Elem> {
        let t = self.bump();
        match t.tok {
            Tok::Num(q) => Ok(self.ring.from_rational(&q)),
            Tok::Ident(name) => self.ring.lookup(&name).map_err(|k| err(t.line, t.col, k)),
            Tok::LParen => {
                let x = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(x)
            }
            Tok::LBracket => {
                let mut items = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    items.push(self.expr()?);
                }
                if items.len() < 2 {
                    return Err(syntax(t.line, t.col, "a commutator needs at least two entries"));
                }
                self.expect(Tok::RBracket, "`]`")?;
                Ok(left_normed(self.ring, &items).expect("nonempty"))
            }
            Tok::Eof => Err(syntax(t.line, t.col, "unexpected end of input")),
            other => Err(syntax(t.line, t.col, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::LBracket => "`[`",
        Tok::RBracket => "`]`",
        Tok::Comma => "`,`",
        Tok::Semi => "`;`",
        Tok::Newline => "line break",
        Tok::Eof => "end of input",
    }
}

/// Parses a single element; line breaks are treated as whitespace.
pub fn parse_element<R: TextRing>(ring: &R, src: &str) -> PResult<R::Elem> {
    let toks = lex(src, 1)?.into_iter().filter(|t| t.tok != Tok::Newline).collect();
    let mut p = Parser { ring, toks, pos: 0 };
    let x = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::Eof {
        return Err(syntax(t.line, t.col, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(x)
}

/// Parses a matrix body: rows separated by `;` or newlines, entries by `,`.
pub fn parse_matrix<R: TextRing>(ring: &R, src: &str) -> PResult<RingMatrix<R::Elem>> {
    parse_matrix_from(ring, src, 1)
}

fn parse_matrix_from<R: TextRing>(ring: &R, src: &str, first_line: usize) -> PResult<RingMatrix<R::Elem>> {
    let mut p = Parser {
        ring,
        toks: lex(src, first_line)?,
        pos: 0,
    };
    let mut rows: Vec<(usize, usize, Vec<R::Elem>)> = Vec::new();
    loop {
        while matches!(p.peek().tok, Tok::Newline | Tok::Semi) {
            p.bump();
        }
        if p.peek().tok == Tok::Eof {
            break;
        }
        let start = p.peek().clone();
        let mut row = vec![p.expr()?];
        while p.peek().tok == Tok::Comma {
            p.bump();
            row.push(p.expr()?);
        }
        rows.push((start.line, start.col, row));
        let t = p.peek().clone();
        match t.tok {
            Tok::Newline | Tok::Semi | Tok::Eof => {}
            other => return Err(syntax(t.line, t.col, format!("unexpected {}", describe(&other)))),
        }
    }
    let Some((l0, c0, first)) = rows.first() else {
        return Err(syntax(first_line, 1, "empty matrix"));
    };
    let cols = first.len();
    for (k, (line, col, row)) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(err(
                *line,
                *col,
                ParseErrorKind::RaggedRows {
                    row: k + 1,
                    found: row.len(),
                    expected: cols,
                },
            ));
        }
    }
    if rows.len() != cols {
        return Err(err(*l0, *c0, ParseErrorKind::NonSquare { rows: rows.len(), cols }));
    }
    RingMatrix::from_rows(rows.into_iter().map(|(_, _, r)| r).collect())
        .map_err(|_| err(first_line, 1, ParseErrorKind::NonSquare { rows: 0, cols }))
}

/// The ring declared in a source document header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDecl {
    Free(Vec<String>),
    Grassmann(u32),
    Rational,
}

impl fmt::Display for RingDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDecl::Free(names) => write!(f, "free {}", names.join(", ")),
            RingDecl::Grassmann(k) => write!(f, "grassmann {k}"),
            RingDecl::Rational => write!(f, "rational"),
        }
    }
}

/// A parsed document: ring header plus the unparsed matrix body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceDoc {
    pub ring: RingDecl,
    pub body: String,
    /// Line number of the first body line, for error positions.
    pub body_line: usize,
}

impl SourceDoc {
    /// Parses the body as a matrix over `ring`.
    pub fn matrix<R: TextRing>(&self, ring: &R) -> PResult<RingMatrix<R::Elem>> {
        parse_matrix_from(ring, &self.body, self.body_line)
    }
}

fn parse_header(line: &str, lineno: usize) -> PResult<RingDecl> {
    let bad = |msg: &str| err(lineno, 1, ParseErrorKind::BadHeader(msg.to_string()));
    let rest = line
        .trim()
        .strip_prefix("ring")
        .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
        .ok_or_else(|| bad("the first line must be `ring free ...`, `ring grassmann K` or `ring rational`"))?;
    let words: Vec<&str> = rest
        .split(|c: char| c.is_whitespace() || c == ',' || c == ':')
        .filter(|w| !w.is_empty())
        .collect();
    match words.split_first() {
        Some((&"rational", [])) => Ok(RingDecl::Rational),
        Some((&"grassmann", [k])) => k.parse().map(RingDecl::Grassmann).map_err(|_| bad("expected a rank")),
        Some((&"free", names)) if !names.is_empty() => {
            for n in names {
                let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !ok {
                    return Err(bad(&format!("invalid generator name `{n}`")));
                }
            }
            Ok(RingDecl::Free(names.iter().map(|s| s.to_string()).collect()))
        }
        _ => Err(bad("unknown ring kind")),
    }
}

/// Splits a document into its ring declaration and matrix body.
pub fn parse_source(src: &str) -> PResult<SourceDoc> {
    let mut lines = src.split_inclusive('\n').enumerate();
    for (idx, line) in lines.by_ref() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let ring = parse_header(content, idx + 1)?;
        let body: String = lines.map(|(_, l)| l).collect();
        return Ok(SourceDoc {
            ring,
            body,
            body_line: idx + 2,
        });
    }
    Err(err(1, 1, ParseErrorKind::BadHeader("missing ring declaration".into())))
}

/// A complete, replayable document for a matrix.
pub fn format_source<R: TextRing>(decl: &RingDecl, ring: &R, a: &RingMatrix<R::Elem>) -> String {
    format!("ring {decl}\n{}\n", format_matrix(ring, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{commutator, int, rat};

    fn free_ab() -> FreeAlgebra {
        FreeAlgebra::new(["a", "b"]).unwrap()
    }

    #[test]
    fn commutator_text() {
        let f = free_ab();
        let x = parse_element(&f, "a*b - b*a").unwrap();
        let (a, b) = (f.generator(0).unwrap(), f.generator(1).unwrap());
        assert_eq!(x, commutator(&f, &a, &b));
        assert_eq!(format_element(&f, &x), "a*b - b*a");
        assert_eq!(parse_element(&f, "[a, b]").unwrap(), x);
    }

    #[test]
    fn grassmann_bracket_doubles() {
        let e = Grassmann::new(2).unwrap();
        let x = parse_element(&e, "[v1,v2]").unwrap();
        assert_eq!(x, e.scale(&e.blade(&[1, 2]).unwrap(), &int(2)));
        assert_eq!(format_element(&e, &x), "2*v1*v2");
    }

    #[test]
    fn rational_scaling_and_zero() {
        let f = free_ab();
        assert_eq!(parse_element(&f, "1/2*(a+a)").unwrap(), f.generator(0).unwrap());
        assert_eq!(format_element(&f, &f.zero()), "0");
        assert_eq!(format_element(&Rationals, &rat(-3, 4)), "-3/4");
        assert_eq!(parse_element(&Rationals, "-3/4 + 1").unwrap(), rat(1, 4));
    }

    #[test]
    fn error_positions_and_kinds() {
        let f = free_ab();
        let e = parse_element(&f, "a +\n  c").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::Undeclared("c".into()));
        let g = Grassmann::new(4).unwrap();
        assert!(matches!(
            parse_element(&g, "v7").unwrap_err().kind,
            ParseErrorKind::RankViolation { .. }
        ));
        assert!(matches!(
            parse_element(&f, "a * ").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            parse_element(&f, "a / b").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            parse_element(&f, "(a").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            parse_element(&f, "[a]").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
    }

    #[test]
    fn matrices() {
        let f = FreeAlgebra::matrix_entries(2);
        let m = parse_matrix(&f, "a, b; c, d").unwrap();
        let g = f.generators();
        assert_eq!(
            m,
            RingMatrix::from_rows(vec![vec![g[0].clone(), g[1].clone()], vec![g[2].clone(), g[3].clone()]]).unwrap()
        );
        assert_eq!(parse_matrix(&f, "a, b\n\nc, d\n").unwrap(), m);
        assert_eq!(
            parse_matrix(&Rationals, "1, 0; 0, 1").unwrap(),
            crate::matrix::identity(&Rationals, 2)
        );
        let e = parse_matrix(&f, "a, b; c").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::RaggedRows {
                row: 2,
                found: 1,
                expected: 2
            }
        ));
        let e = parse_matrix(&f, "a, b").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::NonSquare { rows: 1, cols: 2 }));
        // commas inside brackets do not split entries
        let m2 = parse_matrix(&f, "[a, b], 0\n0, [c,\n d]").unwrap();
        assert_eq!(m2.get(1, 1), &commutator(&f, &g[2], &g[3]));
    }

    #[test]
    fn source_documents() {
        let doc = parse_source("# comment\nring free a, b, c, d\na, b\nc, d\n").unwrap();
        assert_eq!(
            doc.ring,
            RingDecl::Free(vec!["a".into(), "b".into(), "c".into(), "d".into()])
        );
        assert_eq!(doc.body_line, 3);
        let f = FreeAlgebra::new(["a", "b", "c", "d"]).unwrap();
        let m = doc.matrix(&f).unwrap();
        assert_eq!(format_source(&doc.ring, &f, &m), "ring free a, b, c, d\na, b\nc, d\n");
        let err = parse_source("ring free a, b\na, x\nb, a\n").unwrap();
        let e = err.matrix(&FreeAlgebra::new(["a", "b"]).unwrap()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 4));
        assert_eq!(
            parse_source("ring grassmann 4\n1").unwrap().ring,
            RingDecl::Grassmann(4)
        );
        assert_eq!(parse_source("ring rational\n1").unwrap().ring, RingDecl::Rational);
        assert!(matches!(
            parse_source("ring banana\n").unwrap_err().kind,
            ParseErrorKind::BadHeader(_)
        ));
        assert!(parse_source("").is_err());
    }

    #[test]
    fn polynomial_printing() {
        let pr = PolyRing::new(Rationals);
        let p = pr.from_coeffs(vec![int(2), int(-4), int(2)]);
        assert_eq!(format_element(&pr, &p), "2*t^2 - 4*t + 2");
        let f = free_ab();
        let pf = PolyRing::new(&f);
        let q = pf.from_coeffs(vec![
            f.add(&f.generator(0).unwrap(), &f.generator(1).unwrap()),
            f.from_int(-1),
        ]);
        assert_eq!(format_element(&pf, &q), "-t + (a + b)");
    }

    #[test]
    fn powers_only_exist_for_t() {
        let f = free_ab();
        let pf = PolyRing::new(&f);
        let p = parse_element(&pf, "3*t^2 - a*t").unwrap();
        assert_eq!(format_element(&pf, &p), "3*t^2 - a*t");
        let e = parse_element(&f, "a^2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Undeclared("a^2".into()));
    }
}
