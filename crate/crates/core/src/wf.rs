//! Well-formedness rules.

use std::fmt;

use crate::model::Model;

/// Rule identifiers. Stable; the CLI prints them verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Only boolean and tristate configs may have a reverse dependency other than `n`.
    W1,
    /// Only int and hex configs may have ranges.
    W2,
    /// Choice members must be declared configs.
    W3,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::W1 => "W1",
            Rule::W2 => "W2",
            Rule::W3 => "W3",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Config(String),
    /// Index into `Model::choices`.
    Choice(usize),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Config(n) => write!(f, "config {n}"),
            Subject::Choice(i) => write!(f, "choice #{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub subject: Subject,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.rule, self.subject, self.detail)
    }
}

/// Returns every well-formedness violation, configs in name order then choices.
pub fn check_well_formed(model: &Model) -> Vec<Violation> {
    let mut out = Vec::new();
    for cfg in model.configs() {
        // syntactic check: the literal constant n and nothing else
        if !cfg.ty.is_tri() && !cfg.rev.is_const_n() {
            out.push(Violation {
                rule: Rule::W1,
                subject: Subject::Config(cfg.name.clone()),
                detail: format!(
                    "{} config has reverse dependency `{}`, must be n",
                    cfg.ty,
                    crate::io::render_expr(&cfg.rev)
                ),
            });
        }
        if !cfg.ty.is_numeric() && !cfg.ranges.is_empty() {
            out.push(Violation {
                rule: Rule::W2,
                subject: Subject::Config(cfg.name.clone()),
                detail: format!(
                    "{} config has {} range(s), only int and hex configs may",
                    cfg.ty,
                    cfg.ranges.len()
                ),
            });
        }
    }
    for (i, ch) in model.choices().iter().enumerate() {
        for m in &ch.members {
            if !model.is_declared(m) {
                out.push(Violation {
                    rule: Rule::W3,
                    subject: Subject::Choice(i),
                    detail: format!("member `{m}` is not a declared config"),
                });
            }
        }
    }
    out
}
