//! Expression and literal syntax shared by the model and configuration formats.

use std::fmt::Write as _;

use super::ParseError;
use crate::model::{Atom, Const, Expr, Tri};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Lit(Const),
    If,
    LParen,
    RParen,
    AndAnd,
    OrOr,
    Bang,
    Eq,
    Neq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(n) => format!("identifier `{n}`"),
            Tok::Lit(c) => format!("literal {}", render_const(c)),
            Tok::If => "`if`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::AndAnd => "`&&`".into(),
            Tok::OrOr => "`||`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
        }
    }
}

/// A token with its 1-based column.
pub(crate) type Spanned = (Tok, usize);

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// True if `s` can name a config: identifier-shaped and not reserved.
pub fn is_valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if is_ident_start(c))
        && chars.all(is_ident_char)
        && Tri::from_symbol(s).is_none()
        && s != "if"
}

/// Lexes `text`; `col0` is the column of its first character.
pub(crate) fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        let err = |msg: String| ParseError::new(line, col, msg);
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            '=' => out.push((Tok::Eq, col)),
            '!' if chars.get(i + 1) == Some(&'=') => {
                out.push((Tok::Neq, col));
                i += 1;
            }
            '!' => out.push((Tok::Bang, col)),
            '&' | '|' => {
                if chars.get(i + 1) != Some(&c) {
                    return Err(err(format!("expected `{c}{c}`")));
                }
                out.push((if c == '&' { Tok::AndAnd } else { Tok::OrOr }, col));
                i += 1;
            }
            '"' => {
                let (s, next) = lex_string(&chars, i).map_err(err)?;
                out.push((Tok::Lit(Const::Str(s)), col));
                i = next;
                continue;
            }
            c if c.is_ascii_digit() || c == '-' => {
                let start = i;
                i += 1;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push((Tok::Lit(parse_number(&word).map_err(err)?), col));
                continue;
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match Tri::from_symbol(&word) {
                    Some(t) => Tok::Lit(Const::Tri(t)),
                    None if word == "if" => Tok::If,
                    None => Tok::Ident(word),
                };
                out.push((tok, col));
                continue;
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

/// Lexes a quoted string starting at `chars[start] == '"'`. Returns the
/// contents and the index after the closing quote.
pub(crate) fn lex_string(chars: &[char], start: usize) -> Result<(String, usize), String> {
    let mut s = String::new();
    let mut i = start + 1;
    while i < chars.len() {
        match chars[i] {
            '"' => return Ok((s, i + 1)),
            '\\' if matches!(chars.get(i + 1), Some('"') | Some('\\')) => {
                s.push(chars[i + 1]);
                i += 2;
            }
            c => {
                s.push(c);
                i += 1;
            }
        }
    }
    Err("unterminated string literal".into())
}

/// Parses a hex (`0x…`) or decimal integer literal.
pub(crate) fn parse_number(word: &str) -> Result<Const, String> {
    if let Some(digits) = word.strip_prefix("0x") {
        return Const::hex(digits).ok_or_else(|| format!("malformed hex literal `{word}`"));
    }
    let digits = word.strip_prefix('-').unwrap_or(word);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed integer literal `{word}`"));
    }
    word.parse::<i64>()
        .map(Const::Int)
        .map_err(|_| format!("integer literal `{word}` out of range"))
}

/// Recursive-descent parser over one line's tokens.
pub(crate) struct Parser<'t> {
    toks: &'t [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'t> Parser<'t> {
    pub(crate) fn new(toks: &'t [Spanned], line: usize, end_col: usize) -> Self {
        Parser {
            toks,
            pos: 0,
            line,
            end_col,
        }
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::OrOr) {
            lhs = Expr::or(lhs, self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::AndAnd) {
            lhs = Expr::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Bang) {
            return Ok(Expr::not(self.unary()?));
        }
        if self.eat(&Tok::LParen) {
            let e = self.expr()?;
            if !self.eat(&Tok::RParen) {
                return Err(self.unexpected("`)`"));
            }
            return Ok(e);
        }
        let lhs = self.atom()?;
        if self.eat(&Tok::Eq) {
            Ok(Expr::Eq(lhs, self.atom()?))
        } else if self.eat(&Tok::Neq) {
            Ok(Expr::Neq(lhs, self.atom()?))
        } else {
            Ok(Expr::Leaf(lhs))
        }
    }

    pub(crate) fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Lit(_)) => match self.bump() {
                Some(Tok::Ident(n)) => Ok(Atom::Id(n)),
                Some(Tok::Lit(c)) => Ok(Atom::Const(c)),
                _ => unreachable!(),
            },
            _ => Err(self.unexpected("an identifier or literal")),
        }
    }
}

pub(crate) fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub(crate) fn render_const(c: &Const) -> String {
    match c {
        Const::Str(s) => escape_string(s),
        other => other.render(),
    }
}

/// Value as written in a configuration document; `?` for ⊥.
pub fn render_value(v: Option<&Const>) -> String {
    v.map_or_else(|| "?".to_string(), render_const)
}

pub fn render_atom(a: &Atom) -> String {
    match a {
        Atom::Id(n) => n.clone(),
        Atom::Const(c) => render_const(c),
    }
}

/// Canonical rendering: every binary operator parenthesized.
pub fn render_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

fn write_expr(out: &mut String, e: &Expr) {
    match e {
        Expr::Or(a, b) | Expr::And(a, b) => {
            let op = if matches!(e, Expr::Or(..)) { "||" } else { "&&" };
            out.push('(');
            write_expr(out, a);
            let _ = write!(out, " {op} ");
            write_expr(out, b);
            out.push(')');
        }
        Expr::Not(inner) => {
            out.push('!');
            if matches!(**inner, Expr::Eq(..) | Expr::Neq(..)) {
                out.push('(');
                write_expr(out, inner);
                out.push(')');
            } else {
                write_expr(out, inner);
            }
        }
        Expr::Eq(x, y) => {
            let _ = write!(out, "{} = {}", render_atom(x), render_atom(y));
        }
        Expr::Neq(x, y) => {
            let _ = write!(out, "{} != {}", render_atom(x), render_atom(y));
        }
        Expr::Leaf(a) => out.push_str(&render_atom(a)),
    }
}

/// Parses a complete expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text, 1, 1)?;
    let mut p = Parser::new(&toks, 1, text.chars().count() + 1);
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}
