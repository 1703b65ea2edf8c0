//! One-variable-per-symbol propositional abstraction of a model.
//!
//! Each declared config becomes one boolean variable, read through
//! [`abstract_value`]. Expressions are rewritten into propositional formulas,
//! the per-config and per-choice constraints are conjoined by
//! [`build_formula`], and the result can be emitted as DIMACS CNF or checked
//! against the exact semantics with [`check_soundness`].

mod clauses;
mod cnf;
mod dimacs;
mod rewrite;
mod soundness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use clauses::{
    build_formula, prop_bounds_clause, prop_choice_clause, prop_default_clause, Abstraction, ChooseEncoding,
    DEFAULT_CLAUSE_CAP,
};
pub use cnf::{relax, to_cnf, Clause, CnfError, Literal};
pub use dimacs::{emit_dimacs, numbering_for, CnfDoc};
pub use rewrite::{rewrite_expr, Diagnostic, Polarity, Rewriter};
pub use soundness::{check_soundness, SoundnessError, SoundnessReport};

use crate::eval::Configuration;
use crate::model::{ConfigType, Const, Model, Tri};

/// A propositional formula over config names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Prop {
    True,
    False,
    Var(String),
    Not(Box<Prop>),
    And(Vec<Prop>),
    Or(Vec<Prop>),
    Implies(Box<Prop>, Box<Prop>),
    /// `from_equality` marks biconditionals produced by rewriting `X = Y`;
    /// [`relax`] drops the clauses they expand to.
    Iff {
        lhs: Box<Prop>,
        rhs: Box<Prop>,
        from_equality: bool,
    },
}

impl Prop {
    pub fn var(name: impl Into<String>) -> Prop {
        Prop::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Prop) -> Prop {
        Prop::Not(Box::new(p))
    }

    pub fn and2(a: Prop, b: Prop) -> Prop {
        Prop::And(vec![a, b])
    }

    pub fn or2(a: Prop, b: Prop) -> Prop {
        Prop::Or(vec![a, b])
    }

    pub fn implies(a: Prop, b: Prop) -> Prop {
        Prop::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Prop, b: Prop) -> Prop {
        Prop::Iff {
            lhs: Box::new(a),
            rhs: Box::new(b),
            from_equality: false,
        }
    }

    pub fn equality(a: Prop, b: Prop) -> Prop {
        Prop::Iff {
            lhs: Box::new(a),
            rhs: Box::new(b),
            from_equality: true,
        }
    }

    /// Conjunction; `True` when empty, the element itself when single.
    pub fn and_all(mut parts: Vec<Prop>) -> Prop {
        match parts.len() {
            0 => Prop::True,
            1 => parts.pop().unwrap(),
            _ => Prop::And(parts),
        }
    }

    /// Disjunction; `False` when empty, the element itself when single.
    pub fn or_all(mut parts: Vec<Prop>) -> Prop {
        match parts.len() {
            0 => Prop::False,
            1 => parts.pop().unwrap(),
            _ => Prop::Or(parts),
        }
    }

    /// Evaluates under `value`, which must answer for every variable.
    pub fn eval_with(&self, value: &impl Fn(&str) -> bool) -> bool {
        match self {
            Prop::True => true,
            Prop::False => false,
            Prop::Var(v) => value(v),
            Prop::Not(p) => !p.eval_with(value),
            Prop::And(ps) => ps.iter().all(|p| p.eval_with(value)),
            Prop::Or(ps) => ps.iter().any(|p| p.eval_with(value)),
            Prop::Implies(a, b) => !a.eval_with(value) || b.eval_with(value),
            Prop::Iff { lhs, rhs, .. } => lhs.eval_with(value) == rhs.eval_with(value),
        }
    }

    /// Evaluates under an assignment; unassigned variables are false.
    pub fn eval(&self, assignment: &BTreeMap<String, bool>) -> bool {
        self.eval_with(&|v| assignment.get(v).copied().unwrap_or(false))
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Prop::True | Prop::False => {}
            Prop::Var(v) => {
                out.insert(v);
            }
            Prop::Not(p) => p.collect_vars(out),
            Prop::And(ps) | Prop::Or(ps) => ps.iter().for_each(|p| p.collect_vars(out)),
            Prop::Implies(a, b) | Prop::Iff { lhs: a, rhs: b, .. } => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, ps: &[Prop], op: &str| -> fmt::Result {
            f.write_str("(")?;
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")
        };
        match self {
            Prop::True => f.write_str("true"),
            Prop::False => f.write_str("false"),
            Prop::Var(v) => f.write_str(v),
            Prop::Not(p) => write!(f, "!{p}"),
            Prop::And(ps) => join(f, ps, "&"),
            Prop::Or(ps) => join(f, ps, "|"),
            Prop::Implies(a, b) => write!(f, "({a} -> {b})"),
            Prop::Iff { lhs, rhs, .. } => write!(f, "({lhs} <-> {rhs})"),
        }
    }
}

/// Boolean reading of a config value:
///
/// | type     | true when              | false when |
/// |----------|------------------------|------------|
/// | tristate | `m` or `y`             | `n`        |
/// | boolean  | `y`                    | `n`        |
/// | string   | non-empty text         | `""`       |
/// | int      | any integer, even 0    | `""`       |
/// | hex      | any hex value          | `""`       |
pub fn abstract_value(ty: ConfigType, v: Option<&Const>) -> bool {
    match (ty, v) {
        (ConfigType::Tristate, Some(Const::Tri(t))) => t.truthy(),
        (ConfigType::Boolean, Some(Const::Tri(t))) => *t == Tri::Y,
        (ConfigType::String, Some(Const::Str(s))) => !s.is_empty(),
        (ConfigType::Int, Some(Const::Int(_))) => true,
        (ConfigType::Hex, Some(Const::Hex(_))) => true,
        _ => false,
    }
}

/// The boolean image of a configuration over the model's declared configs.
pub fn abstract_config(model: &Model, c: &Configuration) -> BTreeMap<String, bool> {
    model
        .configs()
        .map(|cfg| (cfg.name.clone(), abstract_value(cfg.ty, c.value(&cfg.name))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abstraction_table() {
        use ConfigType::*;
        assert!(!abstract_value(Tristate, Some(&Tri::N.into())));
        assert!(abstract_value(Tristate, Some(&Tri::M.into())));
        assert!(abstract_value(Tristate, Some(&Tri::Y.into())));
        assert!(abstract_value(Boolean, Some(&Tri::Y.into())));
        assert!(!abstract_value(Boolean, Some(&Tri::N.into())));
        assert!(abstract_value(String, Some(&Const::str("x"))));
        assert!(!abstract_value(String, Some(&Const::empty_str())));
        assert!(abstract_value(Int, Some(&Const::Int(0))));
        assert!(!abstract_value(Int, Some(&Const::empty_str())));
        assert!(abstract_value(Hex, Some(&Const::Hex("0".into()))));
        assert!(!abstract_value(Hex, Some(&Const::empty_str())));
    }

    #[test]
    fn eval_connectives() {
        let a = BTreeMap::from([("A".to_string(), true), ("B".to_string(), false)]);
        assert!(Prop::implies(Prop::var("B"), Prop::False).eval(&a));
        assert!(!Prop::iff(Prop::var("A"), Prop::var("B")).eval(&a));
        assert!(Prop::and_all(vec![]).eval(&a));
        assert!(!Prop::or_all(vec![]).eval(&a));
        assert_eq!(
            Prop::and2(Prop::var("A"), Prop::not(Prop::var("B"))).to_string(),
            "(A & !B)"
        );
    }
}
