//! Boolean expressions and the `.bn` network format.
//!
//! ```text
//! # comment
//! n = 3
//! f0 = !x1 & x2
//! f1 = !x2
//! f2 = !x0 & x1
//! ```
//!
//! Precedence from loosest to tightest: `|`, `&`, `^`, `!`. In the F2
//! polynomial notation `x + 1` is `!x` and a product is `&`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::network::BooleanNetwork;
use crate::state::HARD_MAX_DIM;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoolExpr {
    Const(bool),
    Var(usize),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Xor(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn eval(&self, x: u32) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(i) => (x >> i) & 1 == 1,
            BoolExpr::Not(e) => !e.eval(x),
            BoolExpr::And(a, b) => a.eval(x) && b.eval(x),
            BoolExpr::Or(a, b) => a.eval(x) || b.eval(x),
            BoolExpr::Xor(a, b) => a.eval(x) ^ b.eval(x),
        }
    }

    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            BoolExpr::Const(_) => None,
            BoolExpr::Var(i) => Some(*i),
            BoolExpr::Not(e) => e.max_var(),
            BoolExpr::And(a, b) | BoolExpr::Or(a, b) | BoolExpr::Xor(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BoolExpr::Or(..) => 1,
            BoolExpr::And(..) => 2,
            BoolExpr::Xor(..) => 3,
            BoolExpr::Not(_) => 4,
            BoolExpr::Const(_) | BoolExpr::Var(_) => 5,
        }
    }

    fn fmt_child(&self, child: &BoolExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < self.precedence() {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }

    /// Compiles a truth table (`table[x]`, variable `i` is bit `i` of `x`)
    /// into an expression by Shannon expansion on the lowest variable first.
    pub fn from_table(table: &[bool]) -> BoolExpr {
        debug_assert!(table.len().is_power_of_two());
        let m = table.len().trailing_zeros() as usize;
        shannon(table, &(0..m).collect::<Vec<_>>())
    }
}

fn and(a: BoolExpr, b: BoolExpr) -> BoolExpr {
    BoolExpr::And(Box::new(a), Box::new(b))
}

fn or(a: BoolExpr, b: BoolExpr) -> BoolExpr {
    BoolExpr::Or(Box::new(a), Box::new(b))
}

fn not(a: BoolExpr) -> BoolExpr {
    BoolExpr::Not(Box::new(a))
}

fn shannon(table: &[bool], vars: &[usize]) -> BoolExpr {
    if table.iter().all(|&b| b) {
        return BoolExpr::Const(true);
    }
    if table.iter().all(|&b| !b) {
        return BoolExpr::Const(false);
    }
    let v = vars[0];
    let rest = &vars[1..];
    let lo: Vec<bool> = table.iter().step_by(2).copied().collect();
    let hi: Vec<bool> = table.iter().skip(1).step_by(2).copied().collect();
    if lo == hi {
        return shannon(&lo, rest);
    }
    let all = |t: &[bool], b: bool| t.iter().all(|&x| x == b);
    let var = BoolExpr::Var(v);
    if all(&lo, false) {
        return if all(&hi, true) { var } else { and(var, shannon(&hi, rest)) };
    }
    if all(&hi, false) {
        return if all(&lo, true) {
            not(var)
        } else {
            and(not(var), shannon(&lo, rest))
        };
    }
    if all(&lo, true) {
        return or(not(var), shannon(&hi, rest));
    }
    if all(&hi, true) {
        return or(var, shannon(&lo, rest));
    }
    if lo.iter().zip(&hi).all(|(a, b)| a != b) {
        return BoolExpr::Xor(Box::new(var), Box::new(shannon(&lo, rest)));
    }
    or(
        and(not(var.clone()), shannon(&lo, rest)),
        and(var, shannon(&hi, rest)),
    )
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolExpr::Const(b) => write!(f, "{}", u8::from(*b)),
            BoolExpr::Var(i) => write!(f, "x{i}"),
            BoolExpr::Not(e) => {
                f.write_str("!")?;
                self.fmt_child(e, f)
            }
            BoolExpr::And(a, b) | BoolExpr::Or(a, b) | BoolExpr::Xor(a, b) => {
                let op = match self {
                    BoolExpr::And(..) => " & ",
                    BoolExpr::Or(..) => " | ",
                    _ => " ^ ",
                };
                self.fmt_child(a, f)?;
                f.write_str(op)?;
                self.fmt_child(b, f)
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("variable x{variable} is not declared (n = {n})")]
    UndeclaredVariable { variable: usize, n: usize },
    #[error("coordinate f{0} defined twice")]
    DuplicateCoordinate(usize),
    #[error("coordinate f{0} is missing")]
    MissingCoordinate(usize),
    #[error("dimension declared twice")]
    DuplicateDimension,
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(char, Option<usize>),
    Num(usize),
    Eq,
    Not,
    And,
    Or,
    Xor,
    LParen,
    RParen,
}

struct Lexer<'a> {
    line: usize,
    chars: Vec<(usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(line: usize, src: &'a str) -> Self {
        Lexer {
            line,
            chars: src.char_indices().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn err(&self, column: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    /// Tokens with 1-based columns.
    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.chars.len() {
            let (_, c) = self.chars[self.pos];
            let col = self.pos + 1;
            if c.is_whitespace() {
                self.pos += 1;
                continue;
            }
            let simple = match c {
                '=' => Some(Tok::Eq),
                '!' => Some(Tok::Not),
                '&' => Some(Tok::And),
                '|' => Some(Tok::Or),
                '^' => Some(Tok::Xor),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                _ => None,
            };
            if let Some(t) = simple {
                out.push((col, t));
                self.pos += 1;
            } else if c.is_ascii_digit() {
                let n = self.number(col)?;
                out.push((col, Tok::Num(n)));
            } else if c.is_ascii_alphabetic() {
                self.pos += 1;
                let idx = if self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
                    Some(self.number(col)?)
                } else {
                    None
                };
                out.push((col, Tok::Ident(c, idx)));
            } else {
                return Err(self.err(col, format!("unexpected character {c:?}")));
            }
        }
        Ok(out)
    }

    fn number(&mut self, col: usize) -> Result<usize, ParseError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits
            .parse()
            .map_err(|_| self.err(col, format!("number {digits} too large")))
    }
}

struct ExprParser {
    line: usize,
    end_column: usize,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: Vec<(usize, usize)>,
}

impl ExprParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|&(c, _)| c)
            .unwrap_or(self.end_column)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column(),
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    fn expr(&mut self) -> Result<BoolExpr, ParseError> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = or(lhs, self.term()?);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<BoolExpr, ParseError> {
        let mut lhs = self.xor()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = and(lhs, self.xor()?);
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<BoolExpr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Xor) {
            self.pos += 1;
            lhs = BoolExpr::Xor(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<BoolExpr, ParseError> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Num(0)) => {
                self.pos += 1;
                Ok(BoolExpr::Const(false))
            }
            Some(Tok::Num(1)) => {
                self.pos += 1;
                Ok(BoolExpr::Const(true))
            }
            Some(Tok::Ident('x', Some(i))) => {
                self.pos += 1;
                self.vars.push((i, col));
                Ok(BoolExpr::Var(i))
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<BoolExpr, ParseError> {
    let toks = Lexer::new(1, text).tokens()?;
    let mut p = ExprParser {
        line: 1,
        end_column: text.chars().count() + 1,
        toks,
        pos: 0,
        vars: Vec::new(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a `.bn` document into a network; expressions are compiled to
/// truth tables immediately.
pub fn parse_network(text: &str) -> Result<BooleanNetwork, ParseError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut defs: BTreeMap<usize, (usize, BoolExpr, Vec<(usize, usize)>)> = BTreeMap::new();
    let mut last_line = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = Lexer::new(line, raw).tokens()?;
        let syntax = |column: usize, msg: &str| ParseError {
            line,
            column,
            kind: ParseErrorKind::Syntax(msg.to_string()),
        };
        let (col0, head) = toks[0].clone();
        match (head, toks.get(1)) {
            (Tok::Ident('n', None), Some((_, Tok::Eq))) => {
                let (c, value) = match toks.get(2) {
                    Some((c, Tok::Num(v))) => (*c, *v),
                    Some((c, _)) => return Err(syntax(*c, "expected an integer dimension")),
                    None => return Err(syntax(raw.len() + 1, "expected an integer dimension")),
                };
                if let Some((c, _)) = toks.get(3) {
                    return Err(syntax(*c, "trailing input"));
                }
                if declared.is_some() {
                    return Err(ParseError {
                        line,
                        column: col0,
                        kind: ParseErrorKind::DuplicateDimension,
                    });
                }
                if value == 0 || value > HARD_MAX_DIM {
                    return Err(ParseError {
                        line,
                        column: c,
                        kind: ParseErrorKind::InvalidDimension(value),
                    });
                }
                declared = Some((value, line));
            }
            (Tok::Ident('f', Some(i)), Some((_, Tok::Eq))) => {
                if defs.contains_key(&i) {
                    return Err(ParseError {
                        line,
                        column: col0,
                        kind: ParseErrorKind::DuplicateCoordinate(i),
                    });
                }
                let mut p = ExprParser {
                    line,
                    end_column: raw.chars().count() + 1,
                    toks: toks[2..].to_vec(),
                    pos: 0,
                    vars: Vec::new(),
                };
                let e = p.expr()?;
                if p.pos != p.toks.len() {
                    return Err(p.err("trailing input"));
                }
                defs.insert(i, (line, e, p.vars));
            }
            _ => return Err(syntax(col0, "expected 'n = <int>' or 'f<i> = <expr>'")),
        }
    }

    let n = match declared {
        Some((n, _)) => n,
        None => {
            let max_f = defs.keys().next_back().map(|&i| i + 1).unwrap_or(0);
            let max_x = defs
                .values()
                .filter_map(|(_, e, _)| e.max_var())
                .max()
                .map(|i| i + 1)
                .unwrap_or(0);
            max_f.max(max_x)
        }
    };
    if n == 0 || n > HARD_MAX_DIM {
        return Err(ParseError {
            line: last_line.max(1),
            column: 1,
            kind: ParseErrorKind::InvalidDimension(n),
        });
    }
    for (&i, (line, _, vars)) in &defs {
        if i >= n {
            return Err(ParseError {
                line: *line,
                column: 1,
                kind: ParseErrorKind::UndeclaredVariable { variable: i, n },
            });
        }
        if let Some(&(v, column)) = vars.iter().find(|&&(v, _)| v >= n) {
            return Err(ParseError {
                line: *line,
                column,
                kind: ParseErrorKind::UndeclaredVariable { variable: v, n },
            });
        }
    }
    if let Some(missing) = (0..n).find(|i| !defs.contains_key(i)) {
        return Err(ParseError {
            line: last_line.max(1),
            column: 1,
            kind: ParseErrorKind::MissingCoordinate(missing),
        });
    }

    let exprs: Vec<&BoolExpr> = defs.values().map(|(_, e, _)| e).collect();
    let images = (0..1u32 << n)
        .map(|x| {
            exprs
                .iter()
                .enumerate()
                .fold(0u32, |w, (i, e)| if e.eval(x) { w | (1 << i) } else { w })
        })
        .collect();
    Ok(BooleanNetwork::from_images(n, images).expect("dimension checked above"))
}

/// Writes a network in `.bn` format. `parse_network(render_network(f)) == f`.
pub fn render_network(f: &BooleanNetwork) -> String {
    let mut out = format!("n = {}\n", f.dim());
    for i in 0..f.dim() {
        let table = f.table(i).expect("index in range");
        out.push_str(&format!("f{i} = {}\n", BoolExpr::from_table(&table)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::random_network;

    #[test]
    fn precedence_of_operators() {
        // ! > ^ > & > |
        let e = parse_expr("!x0 ^ x1 & x2 | x3").unwrap();
        for x in 0..16u32 {
            let b = |i: u32| (x >> i) & 1 == 1;
            assert_eq!(e.eval(x), ((!b(0) ^ b(1)) && b(2)) || b(3));
        }
        let e = parse_expr("x0 & x1 ^ x2").unwrap();
        for x in 0..8u32 {
            let b = |i: u32| (x >> i) & 1 == 1;
            assert_eq!(e.eval(x), b(0) && (b(1) ^ b(2)));
        }
    }

    #[test]
    fn parses_fig1_with_leading_whitespace() {
        let f = parse_network("f0 = !x1 & x2 \n f1 = !x2 \n f2 = !x0 & x1").unwrap();
        assert_eq!(f.dim(), 3);
        // f(000) = 010
        assert_eq!(f.image(0), 0b010);
    }

    #[test]
    fn single_identity_coordinate() {
        let f = parse_network("f0 = x0").unwrap();
        assert_eq!(f, BooleanNetwork::identity(1).unwrap());
    }

    #[test]
    fn undeclared_variable_is_reported_with_position() {
        let err = parse_network("n = 2\nf0 = x9\nf1 = 1").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 6);
        assert_eq!(
            err.kind,
            ParseErrorKind::UndeclaredVariable { variable: 9, n: 2 }
        );
    }

    #[test]
    fn duplicate_coordinate() {
        let err = parse_network("f0 = 1\nf0 = 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateCoordinate(0));
        assert_eq!(err.line, 2);
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let err = parse_network("# header\nf0 = x0 & ").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        let err = parse_network("f0 = (x0").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        let err = parse_network("g0 = x0").unwrap_err();
        assert_eq!(err.column, 1);
    }

    #[test]
    fn missing_coordinate() {
        let err = parse_network("n = 2\nf0 = x1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingCoordinate(1));
    }

    #[test]
    fn renders_products_of_literals_compactly() {
        let f = parse_network("f0 = !x1 & x2\nf1 = !x2\nf2 = !x0 & x1").unwrap();
        let text = render_network(&f);
        assert_eq!(text, "n = 3\nf0 = !x1 & x2\nf1 = !x2\nf2 = !x0 & x1\n");
    }

    #[test]
    fn render_round_trips_random_networks() {
        for seed in 0..40 {
            let n = 1 + (seed as usize % 6);
            let f = random_network(n, seed).unwrap();
            assert_eq!(parse_network(&render_network(&f)).unwrap(), f);
        }
    }
}
