//! Per-config and per-choice propositional constraints.

use super::cnf::{relax, CnfError};
use super::rewrite::{Diagnostic, Polarity, Rewriter};
use super::Prop;
use crate::model::{Choice, Config, Model};

/// Clause cap for every clause-form conversion done while abstracting.
pub const DEFAULT_CLAUSE_CAP: usize = 1_000_000;

/// How "one member of the choice" is encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChooseEncoding {
    /// Pairwise `!a | !b` for every pair of members.
    #[default]
    AtMostOne,
    /// At-most-one plus the disjunction of all members.
    ExactlyOne,
}

/// The abstraction of a whole model.
#[derive(Debug, Clone, PartialEq)]
pub struct Abstraction {
    pub formula: Prop,
    pub diagnostics: Vec<Diagnostic>,
}

/// `prompt | default_p`, where `default_p` is an if-then-else chain over the
/// defaults ending in `!n`.
pub fn prop_default_clause(cfg: &Config, rw: &mut Rewriter<'_>) -> Prop {
    let n = || Prop::var(cfg.name.clone());
    rw.set_context(format!("config {} prompt", cfg.name));
    let prompt = rw.rewrite(&cfg.prompt, Polarity::Positive);
    rw.set_context(format!("config {} default", cfg.name));

    let mut chain = Prop::not(n());
    for d in cfg.defaults.iter().rev() {
        let cond = rw.rewrite(&d.cond, Polarity::Mixed);
        if cond == Prop::False {
            continue;
        }
        let then = if cfg.ty.is_tri() {
            match rw.rewrite(&d.value, Polarity::Mixed) {
                Prop::True => n(),
                Prop::False => Prop::not(n()),
                v => Prop::iff(n(), v),
            }
        } else {
            n()
        };
        chain = if cond == Prop::True {
            then
        } else {
            Prop::or2(Prop::and2(cond.clone(), then), Prop::and2(Prop::not(cond), chain))
        };
    }
    Prop::or2(prompt, chain)
}

/// `relax(rev) -> n` and `n -> prompt`.
pub fn prop_bounds_clause(cfg: &Config, rw: &mut Rewriter<'_>, cap: usize) -> Result<Prop, CnfError> {
    let n = || Prop::var(cfg.name.clone());
    rw.set_context(format!("config {} select-expr", cfg.name));
    let rev = relax(&rw.rewrite(&cfg.rev, Polarity::Negative), cap)?;
    rw.set_context(format!("config {} prompt", cfg.name));
    let prompt = rw.rewrite(&cfg.prompt, Polarity::Positive);
    Ok(Prop::and2(Prop::implies(rev, n()), Prop::implies(n(), prompt)))
}

/// `prompt -> (one-of(members) & (mandatory -> some member))`. A constant
/// prompt is folded away.
pub fn prop_choice_clause(ch: &Choice, index: usize, rw: &mut Rewriter<'_>, encoding: ChooseEncoding) -> Prop {
    let members: Vec<&String> = ch.members.iter().collect();
    let mut body = Vec::new();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            body.push(Prop::or2(
                Prop::not(Prop::var(a.as_str())),
                Prop::not(Prop::var(b.as_str())),
            ));
        }
    }
    if ch.mandatory || encoding == ChooseEncoding::ExactlyOne {
        body.push(Prop::or_all(members.iter().map(|m| Prop::var(m.as_str())).collect()));
    }
    let body = Prop::and_all(body);

    rw.set_context(format!("choice {index} prompt"));
    match rw.rewrite(&ch.prompt, Polarity::Negative) {
        Prop::True => body,
        Prop::False => Prop::True,
        prompt => Prop::implies(prompt, body),
    }
}

/// Conjunction of the bounds and default clauses of every config (in name
/// order) and the clauses of every choice. Ranges and `MODULES` contribute
/// nothing.
pub fn build_formula(model: &Model, encoding: ChooseEncoding, cap: usize) -> Result<Abstraction, CnfError> {
    let mut rw = Rewriter::new(model);
    let mut parts = Vec::new();
    for cfg in model.configs() {
        parts.push(prop_bounds_clause(cfg, &mut rw, cap)?);
        parts.push(prop_default_clause(cfg, &mut rw));
    }
    for (i, ch) in model.choices().iter().enumerate() {
        parts.push(prop_choice_clause(ch, i, &mut rw, encoding));
    }
    Ok(Abstraction {
        formula: Prop::and_all(parts),
        diagnostics: rw.into_diagnostics(),
    })
}
