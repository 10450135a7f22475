//! The field-description language.
//!
//! A document is a sequence of ordered statements, one per line:
//!
//! ```text
//! # comments and blank lines are ignored
//! name   quartic-example
//! vars   x y            # two or three variables
//! trunc  24             # optional; the CLI --trunc flag overrides it
//! series a x : 0 0 1    # named series: coefficients from degree 0
//! field  dx = y^2 + x^4
//! field  dy = -x*y + x^3*a + (a/x)*y^2
//! integral = x^2 + y^2  # optional, for the check-integral pipeline
//! ```
//!
//! Expressions are polynomial combinations of the declared variables,
//! named series, and exact rationals (`p/q`), with `+ - * / ^` and
//! parentheses. Division is exact series division and fails loudly with
//! the offending expression when a remainder is forced. Named series are
//! taken as polynomials (their tail is zero beyond the listed
//! coefficients).

use std::collections::BTreeMap;
use std::fmt;

use num::ToPrimitive;

use septool_core::rational::{parse_rational, Rational};
use septool_core::series::{Series1, Series2, Series3};
use septool_core::{Field3, PlanarField, DEFAULT_TRUNC};

#[derive(Debug, Clone)]
pub struct DslError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for DslError {}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, DslError> {
    Err(DslError {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Span {
    line: usize,
    start: usize,
    end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(Rational),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Colon,
    Equals,
}

#[derive(Debug, Clone)]
struct SpannedToken {
    token: Token,
    span: Span,
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<SpannedToken>, DslError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | ':' | '=' => {
                let token = match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ':' => Token::Colon,
                    _ => Token::Equals,
                };
                i += 1;
                out.push(SpannedToken {
                    token,
                    span: Span {
                        line: line_no,
                        start,
                        end: i,
                    },
                });
            }
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let value = parse_rational(&text).map_err(|e| DslError {
                    line: line_no,
                    column: start + 1,
                    message: e,
                })?;
                out.push(SpannedToken {
                    token: Token::Number(value),
                    span: Span {
                        line: line_no,
                        start,
                        end: i,
                    },
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_' || bytes[i] == '-')
                {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                out.push(SpannedToken {
                    token: Token::Ident(text),
                    span: Span {
                        line: line_no,
                        start,
                        end: i,
                    },
                });
            }
            other => {
                return err(line_no, i + 1, format!("unexpected character `{other}`"));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone)]
enum Expr {
    Num(Rational, Span),
    Ident(String, Span),
    Neg(Box<Expr>, Span),
    Bin(BinOp, Box<Expr>, Box<Expr>, Span),
    Pow(Box<Expr>, u32, Span),
}

impl Expr {
    fn span(&self) -> Span {
        match self {
            Expr::Num(_, s)
            | Expr::Ident(_, s)
            | Expr::Neg(_, s)
            | Expr::Bin(_, _, _, s)
            | Expr::Pow(_, _, s) => *s,
        }
    }
}

struct ExprParser<'a> {
    tokens: &'a [SpannedToken],
    pos: usize,
    line: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.token)
    }

    fn span_here(&self) -> Span {
        self.tokens
            .get(self.pos.min(self.tokens.len().saturating_sub(1)))
            .map(|t| t.span)
            .unwrap_or(Span {
                line: self.line,
                start: 0,
                end: 0,
            })
    }

    fn advance(&mut self) -> Option<&SpannedToken> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        while let Some(op) = match self.peek() {
            Some(Token::Plus) => Some(BinOp::Add),
            Some(Token::Minus) => Some(BinOp::Sub),
            _ => None,
        } {
            self.advance();
            let rhs = self.term()?;
            let span = join(lhs.span(), rhs.span());
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), span);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.factor()?;
        while let Some(op) = match self.peek() {
            Some(Token::Star) => Some(BinOp::Mul),
            Some(Token::Slash) => Some(BinOp::Div),
            _ => None,
        } {
            self.advance();
            let rhs = self.factor()?;
            let span = join(lhs.span(), rhs.span());
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), span);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            let start = self.span_here();
            self.advance();
            let inner = self.factor()?;
            let span = join(start, inner.span());
            return Ok(Expr::Neg(Box::new(inner), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.advance();
            let sp = self.span_here();
            match self.advance().map(|t| t.token.clone()) {
                Some(Token::Number(n)) => {
                    if !n.is_integer() {
                        return err(sp.line, sp.start + 1, "exponent must be an integer");
                    }
                    let e = n.to_integer().to_u32().ok_or(DslError {
                        line: sp.line,
                        column: sp.start + 1,
                        message: "exponent out of range".to_string(),
                    })?;
                    let span = join(base.span(), sp);
                    Ok(Expr::Pow(Box::new(base), e, span))
                }
                _ => err(sp.line, sp.start + 1, "expected integer exponent after ^"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        let sp = self.span_here();
        match self.advance().map(|t| (t.token.clone(), t.span)) {
            Some((Token::Number(n), span)) => Ok(Expr::Num(n, span)),
            Some((Token::Ident(name), span)) => Ok(Expr::Ident(name, span)),
            Some((Token::LParen, span)) => {
                let inner = self.expr()?;
                match self.advance().map(|t| t.token.clone()) {
                    Some(Token::RParen) => Ok(inner),
                    _ => err(span.line, span.start + 1, "unclosed parenthesis"),
                }
            }
            other => err(
                sp.line,
                sp.start + 1,
                format!("expected a value, found {other:?}"),
            ),
        }
    }
}

fn join(a: Span, b: Span) -> Span {
    Span {
        line: a.line,
        start: a.start.min(b.start),
        end: a.end.max(b.end),
    }
}

#[derive(Debug, Clone)]
pub struct SeriesDecl {
    pub var: String,
    pub coeffs: Vec<Rational>,
    pub trunc: Option<u32>,
}

/// A parsed (but not yet evaluated) field document.
#[derive(Debug, Clone)]
pub struct Document {
    pub name: Option<String>,
    pub vars: Vec<String>,
    pub trunc: Option<u32>,
    pub series: BTreeMap<String, SeriesDecl>,
    fields: BTreeMap<String, Expr>,
    integral: Option<Expr>,
    lines: Vec<String>,
}

pub fn parse_document(source: &str) -> Result<Document, DslError> {
    let mut doc = Document {
        name: None,
        vars: Vec::new(),
        trunc: None,
        series: BTreeMap::new(),
        fields: BTreeMap::new(),
        integral: None,
        lines: source.lines().map(|l| l.to_string()).collect(),
    };
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = tokenize(raw, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let head = match &tokens[0].token {
            Token::Ident(k) => k.clone(),
            _ => return err(line_no, 1, "statement must start with a keyword"),
        };
        match head.as_str() {
            "name" => match tokens.get(1).map(|t| &t.token) {
                Some(Token::Ident(n)) => doc.name = Some(n.clone()),
                _ => return err(line_no, 6, "expected a name"),
            },
            "vars" => {
                let mut vars = Vec::new();
                for t in &tokens[1..] {
                    match &t.token {
                        Token::Ident(v) => vars.push(v.clone()),
                        _ => return err(line_no, t.span.start + 1, "expected a variable name"),
                    }
                }
                if vars.len() < 2 || vars.len() > 3 {
                    return err(line_no, 1, "vars takes two or three names");
                }
                doc.vars = vars;
            }
            "trunc" => match tokens.get(1).map(|t| &t.token) {
                Some(Token::Number(n)) if n.is_integer() => {
                    doc.trunc = n.to_integer().to_u32();
                }
                _ => return err(line_no, 7, "expected a positive integer"),
            },
            "series" => {
                let name = match tokens.get(1).map(|t| &t.token) {
                    Some(Token::Ident(n)) => n.clone(),
                    _ => return err(line_no, 8, "expected a series name"),
                };
                let var = match tokens.get(2).map(|t| &t.token) {
                    Some(Token::Ident(v)) => v.clone(),
                    _ => return err(line_no, 8, "expected the series variable"),
                };
                let mut pos = 3;
                let mut trunc = None;
                if let Some(Token::Ident(k)) = tokens.get(pos).map(|t| &t.token) {
                    if k == "trunc" {
                        match tokens.get(pos + 1).map(|t| &t.token) {
                            Some(Token::Number(n)) if n.is_integer() => {
                                trunc = n.to_integer().to_u32();
                                pos += 2;
                            }
                            _ => return err(line_no, 1, "expected integer after trunc"),
                        }
                    }
                }
                if !matches!(tokens.get(pos).map(|t| &t.token), Some(Token::Colon)) {
                    return err(line_no, 1, "expected `:` before the coefficient list");
                }
                pos += 1;
                let mut coeffs = Vec::new();
                while pos < tokens.len() {
                    // coefficients may be `p`, `-p`, or `p/q`
                    let mut sign = Rational::from_integer(1.into());
                    if matches!(tokens[pos].token, Token::Minus) {
                        sign = -sign;
                        pos += 1;
                    }
                    let numer = match tokens.get(pos).map(|t| &t.token) {
                        Some(Token::Number(n)) => n.clone(),
                        _ => {
                            return err(
                                line_no,
                                tokens[pos.min(tokens.len() - 1)].span.start + 1,
                                "expected a rational coefficient",
                            )
                        }
                    };
                    pos += 1;
                    let value = if matches!(tokens.get(pos).map(|t| &t.token), Some(Token::Slash)) {
                        pos += 1;
                        match tokens.get(pos).map(|t| &t.token) {
                            Some(Token::Number(d)) => {
                                pos += 1;
                                numer / d
                            }
                            _ => return err(line_no, 1, "expected denominator after /"),
                        }
                    } else {
                        numer
                    };
                    coeffs.push(sign * value);
                }
                doc.series.insert(name, SeriesDecl { var, coeffs, trunc });
            }
            "field" => {
                let (comp, span) = match tokens.get(1) {
                    Some(SpannedToken {
                        token: Token::Ident(n),
                        span,
                    }) => (n.clone(), *span),
                    _ => return err(line_no, 7, "expected a component like `dx`"),
                };
                let var = comp.strip_prefix('d').unwrap_or_default().to_string();
                if var.is_empty() {
                    return err(
                        line_no,
                        span.start + 1,
                        "component must be `d` followed by a declared variable",
                    );
                }
                if !matches!(tokens.get(2).map(|t| &t.token), Some(Token::Equals)) {
                    return err(line_no, span.end + 1, "expected `=` after the component");
                }
                let mut p = ExprParser {
                    tokens: &tokens[3..],
                    pos: 0,
                    line: line_no,
                };
                let expr = p.expr()?;
                if p.pos != p.tokens.len() {
                    let sp = p.span_here();
                    return err(sp.line, sp.start + 1, "trailing tokens after expression");
                }
                doc.fields.insert(var, expr);
            }
            "integral" => {
                if !matches!(tokens.get(1).map(|t| &t.token), Some(Token::Equals)) {
                    return err(line_no, 10, "expected `=` after integral");
                }
                let mut p = ExprParser {
                    tokens: &tokens[2..],
                    pos: 0,
                    line: line_no,
                };
                let expr = p.expr()?;
                if p.pos != p.tokens.len() {
                    let sp = p.span_here();
                    return err(sp.line, sp.start + 1, "trailing tokens after expression");
                }
                doc.integral = Some(expr);
            }
            other => {
                return err(line_no, 1, format!("unknown statement `{other}`"));
            }
        }
    }
    if doc.vars.is_empty() {
        return err(1, 1, "document declares no variables (`vars x y`)");
    }
    for var in doc.fields.keys() {
        if !doc.vars.contains(var) {
            return err(
                1,
                1,
                format!("component d{var} does not match the declared variables"),
            );
        }
    }
    Ok(doc)
}

/// Either kind of evaluated series value.
#[derive(Debug, Clone)]
pub enum SeriesValue {
    Two(Series2),
    Three(Series3),
}

/// An evaluated document: the field plus the optional integral candidate.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum FieldValue {
    Planar(PlanarField),
    ThreeD(Field3),
}

#[derive(Debug)]
pub struct BuiltDocument {
    pub name: Option<String>,
    pub trunc: u32,
    pub field: FieldValue,
    pub integral: Option<SeriesValue>,
    pub series: BTreeMap<String, Series1>,
}

struct Evaluator<'a> {
    doc: &'a Document,
    trunc: u32,
    series: BTreeMap<String, Series1>,
}

impl<'a> Evaluator<'a> {
    fn source_slice(&self, span: Span) -> String {
        self.doc
            .lines
            .get(span.line.saturating_sub(1))
            .map(|l| {
                l.chars()
                    .skip(span.start)
                    .take(span.end - span.start)
                    .collect()
            })
            .unwrap_or_default()
    }

    fn semantic(&self, span: Span, message: impl fmt::Display) -> DslError {
        DslError {
            line: span.line,
            column: span.start + 1,
            message: format!("`{}`: {message}", self.source_slice(span)),
        }
    }

    fn var_position(&self, name: &str) -> Option<usize> {
        self.doc.vars.iter().position(|v| v == name)
    }

    fn eval(&self, expr: &Expr) -> Result<SeriesValue, DslError> {
        let three = self.doc.vars.len() == 3;
        match expr {
            Expr::Num(n, _) => Ok(if three {
                SeriesValue::Three(Series3::monomial(
                    self.vars3(),
                    (0, 0, 0),
                    n.clone(),
                    self.trunc,
                ))
            } else {
                SeriesValue::Two(Series2::monomial(
                    self.vars2(),
                    (0, 0),
                    n.clone(),
                    self.trunc,
                ))
            }),
            Expr::Ident(name, span) => {
                if let Some(pos) = self.var_position(name) {
                    return Ok(if three {
                        let mut key = [0u32; 3];
                        key[pos] = 1;
                        SeriesValue::Three(Series3::monomial(
                            self.vars3(),
                            (key[0], key[1], key[2]),
                            Rational::from_integer(1.into()),
                            self.trunc,
                        ))
                    } else {
                        let key = if pos == 0 { (1, 0) } else { (0, 1) };
                        SeriesValue::Two(Series2::monomial(
                            self.vars2(),
                            key,
                            Rational::from_integer(1.into()),
                            self.trunc,
                        ))
                    });
                }
                if let Some(s1) = self.series.get(name) {
                    let pos = self.var_position(s1.var()).ok_or_else(|| {
                        self.semantic(
                            *span,
                            format!(
                                "series `{name}` is in variable `{}`, not among the declared variables",
                                s1.var()
                            ),
                        )
                    })?;
                    return Ok(if three {
                        // embed via a two-variable intermediate
                        let other = (0..3).find(|p| *p != pos).expect("three variables");
                        let pair = if pos < other {
                            (pos, other)
                        } else {
                            (other, pos)
                        };
                        let v2 = (
                            self.doc.vars[pair.0].as_str(),
                            self.doc.vars[pair.1].as_str(),
                        );
                        let embedded2 = Series2::embed(s1, v2, if pair.0 == pos { 0 } else { 1 })
                            .map_err(|e| self.semantic(*span, e))?;
                        SeriesValue::Three(
                            Series3::embed2(&embedded2, self.vars3(), (pair.0, pair.1))
                                .map_err(|e| self.semantic(*span, e))?,
                        )
                    } else {
                        SeriesValue::Two(
                            Series2::embed(s1, self.vars2(), pos)
                                .map_err(|e| self.semantic(*span, e))?,
                        )
                    });
                }
                Err(self.semantic(*span, "undefined name"))
            }
            Expr::Neg(inner, _) => Ok(match self.eval(inner)? {
                SeriesValue::Two(s) => SeriesValue::Two(s.neg()),
                SeriesValue::Three(s) => SeriesValue::Three(s.neg()),
            }),
            Expr::Pow(base, e, span) => {
                let b = self.eval(base)?;
                let mut acc = self.eval(&Expr::Num(Rational::from_integer(1.into()), *span))?;
                for _ in 0..*e {
                    acc = self.mul(acc, b.clone(), *span)?;
                }
                Ok(acc)
            }
            Expr::Bin(op, l, r, span) => {
                let lv = self.eval(l)?;
                let rv = self.eval(r)?;
                match op {
                    BinOp::Add => self.add(lv, rv, *span),
                    BinOp::Sub => {
                        let neg = match rv {
                            SeriesValue::Two(s) => SeriesValue::Two(s.neg()),
                            SeriesValue::Three(s) => SeriesValue::Three(s.neg()),
                        };
                        self.add(lv, neg, *span)
                    }
                    BinOp::Mul => self.mul(lv, rv, *span),
                    BinOp::Div => self.div(lv, rv, *span),
                }
            }
        }
    }

    fn vars2(&self) -> (&str, &str) {
        (self.doc.vars[0].as_str(), self.doc.vars[1].as_str())
    }

    fn vars3(&self) -> (&str, &str, &str) {
        (
            self.doc.vars[0].as_str(),
            self.doc.vars[1].as_str(),
            self.doc.vars[2].as_str(),
        )
    }

    fn add(&self, l: SeriesValue, r: SeriesValue, span: Span) -> Result<SeriesValue, DslError> {
        match (l, r) {
            (SeriesValue::Two(a), SeriesValue::Two(b)) => Ok(SeriesValue::Two(
                a.add(&b).map_err(|e| self.semantic(span, e))?,
            )),
            (SeriesValue::Three(a), SeriesValue::Three(b)) => Ok(SeriesValue::Three(
                a.add(&b).map_err(|e| self.semantic(span, e))?,
            )),
            _ => Err(self.semantic(span, "mixed arities")),
        }
    }

    fn mul(&self, l: SeriesValue, r: SeriesValue, span: Span) -> Result<SeriesValue, DslError> {
        match (l, r) {
            (SeriesValue::Two(a), SeriesValue::Two(b)) => Ok(SeriesValue::Two(
                a.mul(&b).map_err(|e| self.semantic(span, e))?,
            )),
            (SeriesValue::Three(a), SeriesValue::Three(b)) => Ok(SeriesValue::Three(
                a.mul(&b).map_err(|e| self.semantic(span, e))?,
            )),
            _ => Err(self.semantic(span, "mixed arities")),
        }
    }

    fn div(&self, l: SeriesValue, r: SeriesValue, span: Span) -> Result<SeriesValue, DslError> {
        match (l, r) {
            (SeriesValue::Two(a), SeriesValue::Two(b)) => Ok(SeriesValue::Two(
                a.divide_exact(&b).map_err(|e| self.semantic(span, e))?,
            )),
            (SeriesValue::Three(a), SeriesValue::Three(b)) => {
                let (pos, uni) = b.as_univariate().ok_or_else(|| {
                    self.semantic(
                        span,
                        "three-variable division requires a divisor in a single variable",
                    )
                })?;
                Ok(SeriesValue::Three(
                    a.divide_univariate(&uni, pos)
                        .map_err(|e| self.semantic(span, e))?,
                ))
            }
            _ => Err(self.semantic(span, "mixed arities")),
        }
    }
}

/// Evaluate a parsed document into an exact field (and integral candidate).
///
/// Truncation priority: explicit override, then the document's `trunc`
/// statement, then the crate default.
pub fn build_document(
    doc: &Document,
    trunc_override: Option<u32>,
) -> Result<BuiltDocument, DslError> {
    let trunc = trunc_override.or(doc.trunc).unwrap_or(DEFAULT_TRUNC).max(2);
    let mut series = BTreeMap::new();
    for (name, decl) in &doc.series {
        let s_trunc = decl.trunc.unwrap_or(trunc + 1).max(2);
        let s = Series1::from_coeffs(&decl.var, &decl.coeffs, s_trunc);
        series.insert(name.clone(), s);
    }
    let eval = Evaluator { doc, trunc, series };
    let zero_expr = |_pos: usize| -> SeriesValue {
        if doc.vars.len() == 3 {
            SeriesValue::Three(Series3::zero(eval.vars3(), trunc))
        } else {
            SeriesValue::Two(Series2::zero(eval.vars2(), trunc))
        }
    };
    let mut components = Vec::new();
    for (pos, var) in doc.vars.iter().enumerate() {
        match doc.fields.get(var) {
            Some(expr) => components.push(eval.eval(expr)?),
            None => components.push(zero_expr(pos)),
        }
    }
    let field = if doc.vars.len() == 3 {
        let take3 = |v: &SeriesValue| match v {
            SeriesValue::Three(s) => s.clone(),
            _ => unreachable!(),
        };
        FieldValue::ThreeD(
            Field3::new(
                take3(&components[0]),
                take3(&components[1]),
                take3(&components[2]),
            )
            .map_err(|e| DslError {
                line: 1,
                column: 1,
                message: e.to_string(),
            })?,
        )
    } else {
        let take2 = |v: &SeriesValue| match v {
            SeriesValue::Two(s) => s.clone(),
            _ => unreachable!(),
        };
        FieldValue::Planar(
            PlanarField::new(take2(&components[0]), take2(&components[1])).map_err(|e| {
                DslError {
                    line: 1,
                    column: 1,
                    message: e.to_string(),
                }
            })?,
        )
    };
    let integral = doc.integral.as_ref().map(|e| eval.eval(e)).transpose()?;
    Ok(BuiltDocument {
        name: doc.name.clone(),
        trunc,
        field,
        integral,
        series: eval.series,
    })
}

/// Canonical document text for an evaluated field: parsing it back yields
/// the same series coefficient for coefficient.
pub fn render_field(name: Option<&str>, field: &FieldValue, trunc: u32) -> String {
    use septool_core::rational::format_rational;
    let mut out = String::new();
    if let Some(n) = name {
        out.push_str(&format!("name {n}\n"));
    }
    match field {
        FieldValue::Planar(f) => {
            let (x, y) = f.vars();
            out.push_str(&format!("vars {x} {y}\n"));
            out.push_str(&format!("trunc {trunc}\n"));
            for (label, comp) in [(x, f.x_comp()), (y, f.y_comp())] {
                let mut terms = Vec::new();
                for ((i, j), c) in comp.terms() {
                    let mut t = format_rational(c).to_string();
                    if i > 0 {
                        t.push_str(&format!("*{x}^{i}"));
                    }
                    if j > 0 {
                        t.push_str(&format!("*{y}^{j}"));
                    }
                    terms.push(t);
                }
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                out.push_str(&format!("field d{label} = {rhs}\n"));
            }
        }
        FieldValue::ThreeD(f) => {
            let (x, y, z) = f.vars();
            out.push_str(&format!("vars {x} {y} {z}\n"));
            out.push_str(&format!("trunc {trunc}\n"));
            for (label, comp) in [(x, f.x_comp()), (y, f.y_comp()), (z, f.z_comp())] {
                let mut terms = Vec::new();
                for ((i, j, k), c) in comp.terms() {
                    let mut t = format_rational(c).to_string();
                    for (v, e) in [(x, i), (y, j), (z, k)] {
                        if e > 0 {
                            t.push_str(&format!("*{v}^{e}"));
                        }
                    }
                    terms.push(t);
                }
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                out.push_str(&format!("field d{label} = {rhs}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;
    use septool_core::rational::{rat, rat_int};

    const QUARTIC_DOC: &str = "\
# quartic family with a = x^2
name quartic-x2
vars x y
trunc 16
series a x : 0 0 1
field dx = y^2 + x^4
field dy = -x*y + x^3*a + (a/x)*y^2
";

    #[test]
    fn parses_quartic_document() {
        let doc = parse_document(QUARTIC_DOC).unwrap();
        let built = build_document(&doc, None).unwrap();
        assert_eq!(built.trunc, 16);
        let FieldValue::Planar(f) = &built.field else {
            panic!("planar expected")
        };
        assert_eq!(f.x_comp().coeff(0, 2), rat_int(1));
        assert_eq!(f.x_comp().coeff(4, 0), rat_int(1));
        assert_eq!(f.y_comp().coeff(1, 1), rat_int(-1));
        assert_eq!(f.y_comp().coeff(5, 0), rat_int(1));
        assert_eq!(f.y_comp().coeff(1, 2), rat_int(1));
    }

    #[test]
    fn parses_center_and_reports_syntax_errors() {
        let doc = parse_document("vars x y\nfield dx = -y\nfield dy = x\n").unwrap();
        let built = build_document(&doc, Some(10)).unwrap();
        let FieldValue::Planar(f) = &built.field else {
            panic!()
        };
        assert_eq!(f.x_comp().coeff(0, 1), rat_int(-1));
        assert_eq!(f.y_comp().coeff(1, 0), rat_int(1));

        let bad = parse_document("vars x y\nfield dx = y +\n");
        let e = bad.unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("expected a value"));
    }

    #[test]
    fn division_must_be_exact() {
        let doc = parse_document("vars x y\nfield dx = x / y\n").unwrap();
        let e = build_document(&doc, None).unwrap_err();
        assert!(e.message.contains("x / y"), "message: {}", e.message);
        assert!(
            e.message.contains("not divisible"),
            "message: {}",
            e.message
        );
    }

    #[test]
    fn accepted_by_parser_rejected_by_hypothesis() {
        // a = x makes a/x = 1: the parser is fine with it, admissibility is
        // a pipeline concern
        let doc = parse_document(
            "vars x y\nseries a x : 0 1\nfield dx = y^2 + x^4\nfield dy = (a/x)*y^2\n",
        )
        .unwrap();
        let built = build_document(&doc, None).unwrap();
        let a = built.series.get("a").unwrap();
        assert_eq!(a.coeff(1), rat_int(1));
        assert!(!a.coeff(1).is_zero()); // violates a'(0) = 0: callers reject
    }

    #[test]
    fn three_variable_document() {
        let doc = parse_document(
            "vars x y z\nseries a x : 0 0 1/2\nfield dx = y^2 + x^4 + z^2\nfield dy = -x*y + x^3*a + (a/x)*y^2\nfield dz = 0\nintegral = z\n",
        )
        .unwrap();
        let built = build_document(&doc, Some(12)).unwrap();
        let FieldValue::ThreeD(f) = &built.field else {
            panic!()
        };
        assert_eq!(f.x_comp().coeff(0, 0, 2), rat_int(1));
        assert_eq!(f.y_comp().coeff(1, 2, 0), rat(1, 2));
        assert!(f.z_comp().is_zero());
        assert!(built.integral.is_some());
    }

    #[test]
    fn round_trip_through_render() {
        for doc_text in [QUARTIC_DOC, "vars x y\nfield dx = -y\nfield dy = x\n"] {
            let doc = parse_document(doc_text).unwrap();
            let built = build_document(&doc, None).unwrap();
            let rendered = render_field(built.name.as_deref(), &built.field, built.trunc);
            let doc2 = parse_document(&rendered).unwrap();
            let built2 = build_document(&doc2, None).unwrap();
            match (&built.field, &built2.field) {
                (FieldValue::Planar(a), FieldValue::Planar(b)) => {
                    assert!(a.x_comp().jet_eq(b.x_comp()), "{rendered}");
                    assert!(a.y_comp().jet_eq(b.y_comp()), "{rendered}");
                }
                _ => panic!("arity changed in round trip"),
            }
        }
    }
}
