//! Valuation functions: per-configuration predicates for every denotation of a
//! model, and a validator that intersects them.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::eval::{access, bool_interp, eval, Configuration};
use crate::io::render_value;
use crate::model::{Bound, Choice, ChoiceType, Config, ConfigType, Const, DefaultEntry, Model, Tri, MODULES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Denotation {
    Type,
    Bounds,
    Default,
    Range,
    Choice,
    Modules,
    Undeclared,
}

impl fmt::Display for Denotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Denotation::Type => "type",
            Denotation::Bounds => "bounds",
            Denotation::Default => "default",
            Denotation::Range => "range",
            Denotation::Choice => "choice",
            Denotation::Modules => "modules",
            Denotation::Undeclared => "undeclared",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject<'m> {
    Config(&'m str),
    Choice(usize),
    Model,
}

impl fmt::Display for Subject<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Config(n) => write!(f, "config {n}"),
            Subject::Choice(i) => write!(f, "choice #{i}"),
            Subject::Model => f.write_str("model"),
        }
    }
}

/// Outcome of one denotation for one subject. `diagnostic` is empty when satisfied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<'m> {
    pub denotation: Denotation,
    pub subject: Subject<'m>,
    pub satisfied: bool,
    pub diagnostic: String,
}

impl<'m> Verdict<'m> {
    fn new(denotation: Denotation, subject: Subject<'m>, failure: Option<String>) -> Self {
        Verdict {
            denotation,
            subject,
            satisfied: failure.is_none(),
            diagnostic: failure.unwrap_or_default(),
        }
    }
}

impl fmt::Display for Verdict<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.satisfied { "ok" } else { "FAIL" };
        write!(f, "{status} {} {}", self.denotation, self.subject)?;
        if !self.diagnostic.is_empty() {
            write!(f, ": {}", self.diagnostic)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport<'m> {
    pub verdicts: Vec<Verdict<'m>>,
}

impl<'m> ValidationReport<'m> {
    pub fn is_valid(&self) -> bool {
        self.verdicts.iter().all(|v| v.satisfied)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict<'m>> {
        self.verdicts.iter().filter(|v| !v.satisfied)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("configuration has no entry for `{0}`")]
    MissingIdentifier(String),
    #[error("configuration assigns `{0}`, which the model never mentions")]
    UnknownIdentifier(String),
}

fn tri_of(c: &Configuration, name: &str) -> Tri {
    c.tri(name).unwrap_or(Tri::N)
}

fn show(c: &Configuration, name: &str) -> String {
    render_value(c.value(name))
}

pub fn type_den<'m>(cfg: &'m Config, c: &Configuration) -> Verdict<'m> {
    let v = c.value(&cfg.name);
    let ok = match (cfg.ty, v) {
        (ConfigType::Boolean, Some(Const::Tri(t))) => *t != Tri::M,
        (ConfigType::Tristate, Some(Const::Tri(_))) => true,
        (ConfigType::String, Some(Const::Str(_))) => true,
        (ConfigType::Hex, Some(Const::Hex(_))) => true,
        (ConfigType::Int, Some(Const::Int(_))) => true,
        (ConfigType::Hex | ConfigType::Int, Some(Const::Str(s))) => s.is_empty(),
        _ => false,
    };
    let failure = (!ok).then(|| format!("value {} is outside the {} domain", show(c, &cfg.name), cfg.ty));
    Verdict::new(Denotation::Type, Subject::Config(&cfg.name), failure)
}

pub fn bounds_den<'m>(cfg: &'m Config, c: &Configuration) -> Verdict<'m> {
    let lower = eval(&cfg.rev, c);
    let upper = eval(&cfg.prompt, c);
    let v = tri_of(c, &cfg.name);
    let failure = if v < lower {
        Some(format!("value {v} is below the reverse dependency {lower}"))
    } else if upper >= lower && v > upper {
        Some(format!("value {v} is above the prompt condition {upper}"))
    } else {
        None
    };
    Verdict::new(Denotation::Bounds, Subject::Config(&cfg.name), failure)
}

/// The value of the first default whose condition holds. Tristate-typed
/// configs evaluate the value expression; entry-typed configs read it as a leaf.
pub fn resolve_default(defs: &[DefaultEntry], ty: ConfigType, c: &Configuration) -> Const {
    for d in defs {
        if bool_interp(eval(&d.cond, c)) {
            return if ty.is_tri() {
                Const::Tri(eval(&d.value, c))
            } else {
                let leaf = d
                    .value
                    .as_leaf()
                    .expect("entry-typed defaults are leaves (checked at model construction)");
                access(leaf, c).into_owned()
            };
        }
    }
    if ty.is_tri() {
        Const::Tri(Tri::N)
    } else {
        Const::empty_str()
    }
}

/// The value an invisible config is forced to.
pub fn forced_value(cfg: &Config, c: &Configuration) -> Const {
    let def = resolve_default(&cfg.defaults, cfg.ty, c);
    match def {
        Const::Tri(d) if cfg.ty.is_tri() => Const::Tri(d.max(eval(&cfg.rev, c))),
        other => other,
    }
}

pub fn default_den<'m>(cfg: &'m Config, c: &Configuration) -> Verdict<'m> {
    let failure = if bool_interp(eval(&cfg.prompt, c)) {
        None
    } else {
        let forced = forced_value(cfg, c);
        (c.value(&cfg.name) != Some(&forced)).then(|| {
            format!(
                "prompt is off, so the value must be {} but is {}",
                render_value(Some(&forced)),
                show(c, &cfg.name)
            )
        })
    };
    Verdict::new(Denotation::Default, Subject::Config(&cfg.name), failure)
}

fn numeric(v: &Const) -> Option<i128> {
    match v {
        Const::Int(i) => Some(i128::from(*i)),
        Const::Hex(h) => i128::from_str_radix(h, 16).ok(),
        _ => None,
    }
}

fn bound_value(b: &Bound, c: &Configuration) -> Result<i128, String> {
    let v = match b {
        Bound::Int(i) => return Ok(i128::from(*i)),
        Bound::Hex(h) => Const::Hex(h.clone()),
        Bound::Id(n) => match c.get(n) {
            Some(Some(v)) => v.clone(),
            _ => Const::Str(n.clone()),
        },
    };
    numeric(&v).ok_or_else(|| format!("range bound {} is not numeric", render_value(Some(&v))))
}

pub fn range_den<'m>(cfg: &'m Config, c: &Configuration) -> Verdict<'m> {
    let subject = Subject::Config(&cfg.name);
    if cfg.ranges.is_empty() {
        return Verdict::new(Denotation::Range, subject, None);
    }
    // the unset value carries no number; ranges do not constrain it
    if matches!(c.value(&cfg.name), Some(Const::Str(s)) if s.is_empty()) {
        return Verdict::new(Denotation::Range, subject, None);
    }
    let check = || -> Result<(), String> {
        for r in &cfg.ranges {
            if !bool_interp(eval(&r.cond, c)) {
                continue;
            }
            let v = c
                .value(&cfg.name)
                .and_then(numeric)
                .ok_or_else(|| format!("value {} is not numeric", show(c, &cfg.name)))?;
            let lo = bound_value(&r.lower, c)?;
            let hi = bound_value(&r.upper, c)?;
            if v < lo || v > hi {
                return Err(format!(
                    "value {} is outside the active range [{}, {}]",
                    show(c, &cfg.name),
                    lo,
                    hi
                ));
            }
        }
        Ok(())
    };
    Verdict::new(Denotation::Range, subject, check().err())
}

/// Checks a choice; `index` only labels the verdict.
pub fn choice_den<'m>(ch: &Choice, index: usize, c: &Configuration) -> Verdict<'m> {
    let subject = Subject::Choice(index);
    if !bool_interp(eval(&ch.prompt, c)) {
        return Verdict::new(Denotation::Choice, subject, None);
    }
    let at_y: Vec<&str> = ch
        .members
        .iter()
        .filter(|m| tri_of(c, m) == Tri::Y)
        .map(String::as_str)
        .collect();
    let any_set = ch.members.iter().any(|m| tri_of(c, m) > Tri::N);
    let failure = if let Some(first) = at_y.first() {
        ch.members
            .iter()
            .find(|m| m.as_str() != *first && tri_of(c, m) != Tri::N)
            .map(|other| format!("member {first} is y, so {other} must be n but is {}", show(c, other)))
    } else {
        None
    };
    let failure = failure
        .or_else(|| {
            (ch.ty == ChoiceType::Boolean && at_y.is_empty())
                .then(|| "boolean choice needs one member at y".to_string())
        })
        .or_else(|| (ch.mandatory && !any_set).then(|| "mandatory choice has no member selected".to_string()));
    Verdict::new(Denotation::Choice, subject, failure)
}

pub fn modules_den<'m>(c: &Configuration) -> Verdict<'m> {
    let failure = if c.value(MODULES) == Some(&Const::Tri(Tri::N)) {
        c.iter()
            .find(|(_, v)| *v == Some(&Const::Tri(Tri::M)))
            .map(|(name, _)| format!("MODULES is n but {name} is m"))
    } else {
        None
    };
    Verdict::new(Denotation::Modules, Subject::Model, failure)
}

pub fn undeclared_den<'m>(model: &Model, c: &Configuration) -> Verdict<'m> {
    let failure = model
        .undeclared_ids()
        .into_iter()
        .find(|n| !matches!(c.get(n), Some(None)))
        .map(|n| format!("undeclared {n} must be ? but is {}", show(c, n)));
    Verdict::new(Denotation::Undeclared, Subject::Model, failure)
}

/// Checks that `c` assigns exactly the model universe.
pub fn check_coverage(model: &Model, c: &Configuration) -> Result<(), SemanticsError> {
    let universe = model.universe();
    if let Some(missing) = universe.iter().find(|n| !c.contains(n)) {
        return Err(SemanticsError::MissingIdentifier(missing.to_string()));
    }
    if let Some(extra) = c.names().find(|n| !universe.contains(n)) {
        return Err(SemanticsError::UnknownIdentifier(extra.to_string()));
    }
    Ok(())
}

/// Runs every denotation and collects the verdicts.
pub fn validate<'m>(model: &'m Model, c: &Configuration) -> Result<ValidationReport<'m>, SemanticsError> {
    check_coverage(model, c)?;
    let mut verdicts = Vec::new();
    for cfg in model.configs() {
        verdicts.push(type_den(cfg, c));
        verdicts.push(bounds_den(cfg, c));
        verdicts.push(default_den(cfg, c));
        verdicts.push(range_den(cfg, c));
    }
    for (i, ch) in model.choices().iter().enumerate() {
        verdicts.push(choice_den(ch, i, c));
    }
    verdicts.push(modules_den(c));
    verdicts.push(undeclared_den(model, c));
    Ok(ValidationReport { verdicts })
}

/// Fast membership test for enumeration. Stops at the first failing
/// denotation and skips the coverage check.
#[derive(Debug)]
pub struct Validator<'m> {
    model: &'m Model,
    undeclared: Vec<&'m str>,
}

impl<'m> Validator<'m> {
    pub fn new(model: &'m Model) -> Self {
        Validator {
            model,
            undeclared: model.undeclared_ids().into_iter().collect(),
        }
    }

    pub fn is_valid(&self, c: &Configuration) -> bool {
        if !self.undeclared.iter().all(|n| matches!(c.get(n), Some(None))) {
            return false;
        }
        let configs_ok = self.model.configs().all(|cfg| {
            type_den(cfg, c).satisfied
                && bounds_den(cfg, c).satisfied
                && default_den(cfg, c).satisfied
                && range_den(cfg, c).satisfied
        });
        configs_ok
            && self
                .model
                .choices()
                .iter()
                .enumerate()
                .all(|(i, ch)| choice_den(ch, i, c).satisfied)
            && modules_den(c).satisfied
    }

    pub fn universe(&self) -> BTreeSet<&'m str> {
        self.model.universe()
    }
}
