//! Text formats for models and configurations.
//!
//! Model documents are line oriented. Unindented lines open a block,
//! indented lines add properties to the open block, `#` starts a comment:
//!
//! ```text
//! config FOO tristate
//!   prompt (A && !B)
//!   default m if C = "x"
//!   select-expr (D || E)
//! config SIZE int
//!   prompt y
//!   range 1 0x10 if y
//! choice boolean mandatory
//!   prompt y
//!   member FOO
//! ```
//!
//! Configuration documents hold one `NAME=value` line per identifier, where
//! value is `n`, `m`, `y`, a quoted string, `0x…`, a decimal integer, or `?`
//! for ⊥.

mod expr;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use expr::{is_valid_identifier, parse_expr, render_atom, render_expr, render_value};

use crate::eval::Configuration;
use crate::model::{Bound, Choice, ChoiceType, Config, ConfigType, Const, DefaultEntry, Expr, Model, RangeEntry};
use expr::{lex, lex_string, parse_number, Parser, Tok};

/// A positioned parse error. `line` 0 refers to the whole document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn document(message: impl Into<String>) -> Self {
        ParseError::new(0, 0, message)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "{}:{}: {}", self.line, self.column, self.message)
        }
    }
}

/// Every error found in a document, in line order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseErrors(pub Vec<ParseError>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

enum Block {
    Config {
        cfg: Config,
        seen_prompt: bool,
        seen_rev: bool,
    },
    Choice {
        choice: Choice,
        seen_prompt: bool,
    },
}

/// Parses a model document. Well-formedness is not checked here.
pub fn parse_model(text: &str) -> Result<Model, ParseErrors> {
    let mut errors = Vec::new();
    let mut configs: Vec<Config> = Vec::new();
    let mut choices = Vec::new();
    let mut declared: BTreeMap<String, usize> = BTreeMap::new();
    let mut block: Option<Block> = None;
    // properties under a header that failed to parse are not reported again
    let mut skipping = false;

    let close = |block: Option<Block>, configs: &mut Vec<Config>, choices: &mut Vec<Choice>| match block {
        Some(Block::Config { cfg, .. }) => configs.push(cfg),
        Some(Block::Choice { choice, .. }) => choices.push(choice),
        None => {}
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let indented = body.starts_with([' ', '\t']);
        let trimmed = body.trim_start();
        let indent = body.chars().count() - trimmed.chars().count();
        let (keyword, rest) = split_keyword(trimmed);
        let rest_col = indent + keyword.chars().count() + 2;

        let result = if indented {
            if skipping {
                continue;
            }
            match block.as_mut() {
                Some(b) => parse_property(b, keyword, rest, line, indent + 1, rest_col),
                None => Err(ParseError::new(
                    line,
                    indent + 1,
                    "property outside of a config or choice block",
                )),
            }
        } else {
            let old = block.take();
            close(old, &mut configs, &mut choices);
            match keyword {
                "config" => parse_config_header(rest, line, rest_col).and_then(|cfg| {
                    if let Some(first) = declared.get(&cfg.name) {
                        return Err(ParseError::new(
                            line,
                            rest_col,
                            format!("config `{}` already declared on line {first}", cfg.name),
                        ));
                    }
                    declared.insert(cfg.name.clone(), line);
                    block = Some(Block::Config {
                        cfg,
                        seen_prompt: false,
                        seen_rev: false,
                    });
                    Ok(())
                }),
                "choice" => parse_choice_header(rest, line, rest_col).map(|choice| {
                    block = Some(Block::Choice {
                        choice,
                        seen_prompt: false,
                    });
                }),
                other => Err(ParseError::new(
                    line,
                    1,
                    format!("expected `config` or `choice`, found `{other}`"),
                )),
            }
        };
        if !indented {
            skipping = result.is_err();
        }
        if let Err(e) = result {
            errors.push(e);
        }
    }
    close(block, &mut configs, &mut choices);

    if !errors.is_empty() {
        return Err(ParseErrors(errors));
    }
    Model::new(configs, choices).map_err(|e| ParseErrors(vec![ParseError::document(e.to_string())]))
}

fn strip_comment(line: &str) -> &str {
    // `#` inside a string literal is content
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_str => escaped = true,
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

fn split_keyword(s: &str) -> (&str, &str) {
    match s.find([' ', '\t']) {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => (s, ""),
    }
}

fn words(rest: &str, col: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in rest.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((&rest[s..i], col + rest[..s].chars().count()));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((&rest[s..], col + rest[..s].chars().count()));
    }
    out
}

fn parse_config_header(rest: &str, line: usize, col: usize) -> Result<Config, ParseError> {
    let w = words(rest, col);
    let [(name, name_col), (ty, ty_col)] = w[..] else {
        return Err(ParseError::new(line, col, "expected `config <NAME> <type>`"));
    };
    if !is_valid_identifier(name) {
        return Err(ParseError::new(
            line,
            name_col,
            format!("`{name}` is not a valid config name"),
        ));
    }
    let ty = ConfigType::from_keyword(ty)
        .ok_or_else(|| ParseError::new(line, ty_col, format!("unknown config type `{ty}`")))?;
    Ok(Config::new(name, ty))
}

fn parse_choice_header(rest: &str, line: usize, col: usize) -> Result<Choice, ParseError> {
    let w = words(rest, col);
    let [(ty, ty_col), (flag, flag_col)] = w[..] else {
        return Err(ParseError::new(
            line,
            col,
            "expected `choice <boolean|tristate> <mandatory|optional>`",
        ));
    };
    let ty = match ty {
        "boolean" => ChoiceType::Boolean,
        "tristate" => ChoiceType::Tristate,
        other => return Err(ParseError::new(line, ty_col, format!("unknown choice type `{other}`"))),
    };
    let mandatory = match flag {
        "mandatory" => true,
        "optional" => false,
        other => {
            return Err(ParseError::new(
                line,
                flag_col,
                format!("expected `mandatory` or `optional`, found `{other}`"),
            ))
        }
    };
    Ok(Choice::new(ty, mandatory, Expr::n(), Vec::<String>::new()))
}

fn parse_property(
    block: &mut Block,
    keyword: &str,
    rest: &str,
    line: usize,
    kw_col: usize,
    rest_col: usize,
) -> Result<(), ParseError> {
    let toks = lex(rest, line, rest_col)?;
    let mut p = Parser::new(&toks, line, rest_col + rest.chars().count());
    match (block, keyword) {
        (Block::Config { cfg, seen_prompt, .. }, "prompt") => {
            if *seen_prompt {
                return Err(ParseError::new(line, kw_col, "duplicate `prompt`"));
            }
            cfg.prompt = full_expr(&mut p)?;
            *seen_prompt = true;
            Ok(())
        }
        (Block::Config { cfg, .. }, "default") => {
            let value = p.expr()?;
            let cond = if_clause(&mut p)?;
            if !cfg.ty.is_tri() && value.as_leaf().is_none() {
                return Err(ParseError::new(
                    line,
                    rest_col,
                    format!("default of {} config must be a single identifier or constant", cfg.ty),
                ));
            }
            cfg.defaults.push(DefaultEntry::new(value, cond));
            Ok(())
        }
        (Block::Config { cfg, seen_rev, .. }, "select-expr") => {
            if *seen_rev {
                return Err(ParseError::new(line, kw_col, "duplicate `select-expr`"));
            }
            cfg.rev = full_expr(&mut p)?;
            *seen_rev = true;
            Ok(())
        }
        (Block::Config { cfg, .. }, "range") => {
            let lower = bound(&mut p)?;
            let upper = bound(&mut p)?;
            let cond = if_clause(&mut p)?;
            cfg.ranges.push(RangeEntry::new(lower, upper, cond));
            Ok(())
        }
        (Block::Choice { choice, seen_prompt }, "prompt") => {
            if *seen_prompt {
                return Err(ParseError::new(line, kw_col, "duplicate `prompt`"));
            }
            choice.prompt = full_expr(&mut p)?;
            *seen_prompt = true;
            Ok(())
        }
        (Block::Choice { choice, .. }, "member") => match toks.as_slice() {
            [(Tok::Ident(name), col)] => {
                if !choice.members.insert(name.clone()) {
                    return Err(ParseError::new(line, *col, format!("duplicate member `{name}`")));
                }
                Ok(())
            }
            _ => Err(ParseError::new(line, rest_col, "expected `member <NAME>`")),
        },
        (Block::Config { .. }, other) => Err(ParseError::new(
            line,
            kw_col,
            format!("unknown config property `{other}`"),
        )),
        (Block::Choice { .. }, other) => Err(ParseError::new(
            line,
            kw_col,
            format!("unknown choice property `{other}`"),
        )),
    }
}

fn full_expr(p: &mut Parser<'_>) -> Result<Expr, ParseError> {
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Optional `if <expr>`; absent means `y`.
fn if_clause(p: &mut Parser<'_>) -> Result<Expr, ParseError> {
    if p.at_end() {
        return Ok(Expr::y());
    }
    if !p.eat(&Tok::If) {
        return Err(p.error("expected `if` or end of line"));
    }
    full_expr(p)
}

fn bound(p: &mut Parser<'_>) -> Result<Bound, ParseError> {
    let err = p.error("range bounds must be integers, hex literals or identifiers");
    match p.atom()? {
        crate::model::Atom::Id(n) => Ok(Bound::Id(n)),
        crate::model::Atom::Const(Const::Int(i)) => Ok(Bound::Int(i)),
        crate::model::Atom::Const(Const::Hex(h)) => Ok(Bound::Hex(h)),
        _ => Err(err),
    }
}

fn render_bound(b: &Bound) -> String {
    render_atom(&b.to_atom())
}

/// Canonical model text: configs by name, then choices, blocks separated by
/// a blank line, every property written out.
pub fn serialize_model(model: &Model) -> String {
    let mut blocks = Vec::new();
    for cfg in model.configs() {
        let mut b = format!("config {} {}\n", cfg.name, cfg.ty);
        b.push_str(&format!("  prompt {}\n", render_expr(&cfg.prompt)));
        for d in &cfg.defaults {
            b.push_str(&format!(
                "  default {} if {}\n",
                render_expr(&d.value),
                render_expr(&d.cond)
            ));
        }
        b.push_str(&format!("  select-expr {}\n", render_expr(&cfg.rev)));
        for r in &cfg.ranges {
            b.push_str(&format!(
                "  range {} {} if {}\n",
                render_bound(&r.lower),
                render_bound(&r.upper),
                render_expr(&r.cond)
            ));
        }
        blocks.push(b);
    }
    for ch in model.choices() {
        let flag = if ch.mandatory { "mandatory" } else { "optional" };
        let mut b = format!("choice {} {}\n", ch.ty.keyword(), flag);
        b.push_str(&format!("  prompt {}\n", render_expr(&ch.prompt)));
        for m in &ch.members {
            b.push_str(&format!("  member {m}\n"));
        }
        blocks.push(b);
    }
    blocks.join("\n")
}

/// Parses a single configuration value literal.
pub fn parse_value(s: &str) -> Result<Option<Const>, String> {
    if s == "?" {
        return Ok(None);
    }
    if let Some(t) = crate::model::Tri::from_symbol(s) {
        return Ok(Some(Const::Tri(t)));
    }
    if s.starts_with('"') {
        let chars: Vec<char> = s.chars().collect();
        let (text, next) = lex_string(&chars, 0)?;
        if next != chars.len() {
            return Err("trailing characters after string literal".into());
        }
        return Ok(Some(Const::Str(text)));
    }
    parse_number(s).map(Some).map_err(|_| format!("malformed value `{s}`"))
}

/// Parses `NAME=value` lines without checking them against a model.
pub fn parse_config_entries(text: &str) -> Result<Configuration, ParseErrors> {
    parse_config_lines(text).map(|(c, _)| c)
}

fn parse_config_lines(text: &str) -> Result<(Configuration, BTreeMap<String, usize>), ParseErrors> {
    let mut errors = Vec::new();
    let mut c = Configuration::new();
    let mut lines: BTreeMap<String, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let col = raw.chars().count() - raw.trim_start().chars().count() + 1;
        let Some((name, value)) = trimmed.split_once('=') else {
            errors.push(ParseError::new(line, col, "expected `NAME=value`"));
            continue;
        };
        let name = name.trim_end();
        if !is_valid_identifier(name) {
            errors.push(ParseError::new(
                line,
                col,
                format!("`{name}` is not a valid identifier"),
            ));
            continue;
        }
        let value_col = col + trimmed.find('=').unwrap() + 1;
        match parse_value(value.trim()) {
            Ok(v) => {
                if let Some(first) = lines.get(name) {
                    errors.push(ParseError::new(
                        line,
                        col,
                        format!("duplicate entry for `{name}` (first on line {first})"),
                    ));
                } else {
                    lines.insert(name.to_string(), line);
                    c.set(name, v);
                }
            }
            Err(msg) => errors.push(ParseError::new(line, value_col, msg)),
        }
    }
    if errors.is_empty() {
        Ok((c, lines))
    } else {
        Err(ParseErrors(errors))
    }
}

/// Parses a configuration for `model`; it must assign every identifier of the
/// model universe exactly once and nothing else.
pub fn parse_config(text: &str, model: &Model) -> Result<Configuration, ParseErrors> {
    let (c, lines) = parse_config_lines(text)?;
    let universe: BTreeSet<&str> = model.universe();
    let mut errors: Vec<ParseError> = c
        .names()
        .filter(|n| !universe.contains(n))
        .map(|n| ParseError::new(lines[n], 1, format!("`{n}` is not an identifier of the model")))
        .collect();
    errors.extend(
        universe
            .iter()
            .filter(|n| !c.contains(n))
            .map(|n| ParseError::document(format!("missing entry for `{n}`"))),
    );
    if errors.is_empty() {
        Ok(c)
    } else {
        Err(ParseErrors(errors))
    }
}

/// Canonical configuration text: one `NAME=value` line per identifier, sorted.
pub fn serialize_config(c: &Configuration) -> String {
    let mut out = String::new();
    for (name, v) in c.iter() {
        out.push_str(name);
        out.push('=');
        out.push_str(&render_value(v));
        out.push('\n');
    }
    out
}

/// Single-line form used in reports: `A=y B="x" C=?`.
pub fn config_one_line(c: &Configuration) -> String {
    c.iter()
        .map(|(n, v)| format!("{n}={}", render_value(v)))
        .collect::<Vec<_>>()
        .join(" ")
}
