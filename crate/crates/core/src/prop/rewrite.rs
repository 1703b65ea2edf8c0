//! Rewriting Kconfig expressions into propositional formulas.

use std::fmt;

use super::Prop;
use crate::io::render_expr;
use crate::model::{is_hex_digits, Atom, ConfigType, Const, Expr, Model, Tri};

/// Where a rewritten expression sits in the enclosing constraint. Cases the
/// rewrite rules leave undefined are replaced by the constant that weakens
/// the constraint in that position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
    /// Both, e.g. a default condition or the side of a biconditional.
    Mixed,
}

impl Polarity {
    fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
            Polarity::Mixed => Polarity::Mixed,
        }
    }

    fn weakest(self) -> Prop {
        match self {
            Polarity::Negative => Prop::False,
            Polarity::Positive | Polarity::Mixed => Prop::True,
        }
    }
}

/// An expression the rewrite rules do not cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Where the expression came from, e.g. `config FOO prompt`.
    pub context: String,
    pub expr: String,
    pub replacement: Prop,
    pub polarity: Polarity,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: `{}` has no propositional rewrite; abstracted to {}",
            self.context, self.expr, self.replacement
        )?;
        if self.polarity == Polarity::Mixed {
            f.write_str(" (mixed position, may strengthen)")?;
        }
        Ok(())
    }
}

enum Operand<'a> {
    Var(&'a str, ConfigType),
    /// The string the operand renders to in comparisons.
    Lit(String),
}

/// Rewrites expressions of one model and collects diagnostics.
#[derive(Debug)]
pub struct Rewriter<'m> {
    model: &'m Model,
    context: String,
    diagnostics: Vec<Diagnostic>,
}

impl<'m> Rewriter<'m> {
    pub fn new(model: &'m Model) -> Self {
        Rewriter {
            model,
            context: String::new(),
            diagnostics: Vec::new(),
        }
    }

    /// Labels diagnostics produced by subsequent calls.
    pub fn set_context(&mut self, context: impl Into<String>) {
        self.context = context.into();
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn into_diagnostics(self) -> Vec<Diagnostic> {
        self.diagnostics
    }

    pub fn rewrite(&mut self, e: &Expr, polarity: Polarity) -> Prop {
        match e {
            Expr::Leaf(a) => self.leaf(a),
            Expr::Not(inner) => Prop::not(self.rewrite(inner, polarity.flip())),
            Expr::And(a, b) => Prop::and2(self.rewrite(a, polarity), self.rewrite(b, polarity)),
            Expr::Or(a, b) => Prop::or2(self.rewrite(a, polarity), self.rewrite(b, polarity)),
            Expr::Eq(x, y) => self.compare(e, x, y, polarity),
            Expr::Neq(x, y) => match self.compare_defined(x, y) {
                Some(p) => Prop::not(p),
                None => self.undefined(e, polarity),
            },
        }
    }

    fn leaf(&self, a: &Atom) -> Prop {
        match a {
            Atom::Const(Const::Tri(Tri::N)) => Prop::False,
            Atom::Const(Const::Tri(_)) => Prop::True,
            // non-tristate constants always evaluate to n
            Atom::Const(_) => Prop::False,
            Atom::Id(name) => match self.model.type_of(name) {
                Some(ty) if ty.is_tri() => Prop::var(name.clone()),
                // entry-typed variables and undeclared identifiers evaluate to n
                _ => Prop::False,
            },
        }
    }

    fn operand<'a>(&self, a: &'a Atom) -> Operand<'a> {
        match a {
            Atom::Id(name) => match self.model.type_of(name) {
                Some(ty) => Operand::Var(name, ty),
                None => Operand::Lit(name.clone()),
            },
            Atom::Const(c) => Operand::Lit(c.render()),
        }
    }

    fn compare(&mut self, e: &Expr, x: &Atom, y: &Atom, polarity: Polarity) -> Prop {
        self.compare_defined(x, y)
            .unwrap_or_else(|| self.undefined(e, polarity))
    }

    fn compare_defined(&self, x: &Atom, y: &Atom) -> Option<Prop> {
        match (self.operand(x), self.operand(y)) {
            (Operand::Var(a, _), Operand::Var(b, _)) => Some(Prop::equality(Prop::var(a), Prop::var(b))),
            (Operand::Var(v, ty), Operand::Lit(s)) | (Operand::Lit(s), Operand::Var(v, ty)) => {
                Some(compare_with_literal(v, ty, &s))
            }
            (Operand::Lit(_), Operand::Lit(_)) => None,
        }
    }

    fn undefined(&mut self, e: &Expr, polarity: Polarity) -> Prop {
        let replacement = polarity.weakest();
        let d = Diagnostic {
            context: self.context.clone(),
            expr: render_expr(e),
            replacement: replacement.clone(),
            polarity,
        };
        // a prompt is rewritten once per clause that mentions it
        if !self.diagnostics.contains(&d) {
            self.diagnostics.push(d);
        }
        replacement
    }
}

/// `X = lit` read through the boolean interpretation of `X`'s type.
fn compare_with_literal(v: &str, ty: ConfigType, lit: &str) -> Prop {
    let var = || Prop::var(v);
    match ty {
        ConfigType::Tristate => match lit {
            "y" | "m" => var(),
            "n" => Prop::not(var()),
            _ => Prop::False,
        },
        ConfigType::Boolean => match lit {
            "y" => var(),
            "n" => Prop::not(var()),
            _ => Prop::False,
        },
        _ if lit.is_empty() => Prop::not(var()),
        ConfigType::String => var(),
        ConfigType::Int => match lit.parse::<i64>() {
            Ok(i) if i.to_string() == lit => var(),
            _ => Prop::False,
        },
        ConfigType::Hex => match lit.strip_prefix("0x") {
            Some(d) if is_hex_digits(d) => var(),
            _ => Prop::False,
        },
    }
}

/// Rewrites `e` in positive position.
pub fn rewrite_expr(e: &Expr, model: &Model) -> (Prop, Vec<Diagnostic>) {
    let mut rw = Rewriter::new(model);
    let p = rw.rewrite(e, Polarity::Positive);
    (p, rw.into_diagnostics())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Config;

    fn model() -> Model {
        Model::new(
            [
                Config::new("X", ConfigType::Tristate),
                Config::new("Y", ConfigType::Tristate),
                Config::new("B", ConfigType::Boolean),
                Config::new("S", ConfigType::String),
                Config::new("I", ConfigType::Int),
                Config::new("H", ConfigType::Hex),
            ],
            [],
        )
        .unwrap()
    }

    fn rw(e: Expr) -> Prop {
        let (p, d) = rewrite_expr(&e, &model());
        assert!(d.is_empty(), "{d:?}");
        p
    }

    #[test]
    fn constants() {
        assert_eq!(rw(Expr::n()), Prop::False);
        assert_eq!(rw(Expr::tri(Tri::M)), Prop::True);
        assert_eq!(rw(Expr::y()), Prop::True);
        assert_eq!(rw(Expr::constant(Const::str("abc"))), Prop::False);
    }

    #[test]
    fn variables() {
        assert_eq!(rw(Expr::id("X")), Prop::var("X"));
        assert_eq!(rw(Expr::id("B")), Prop::var("B"));
        assert_eq!(rw(Expr::id("S")), Prop::False);
        assert_eq!(rw(Expr::id("I")), Prop::False);
        assert_eq!(rw(Expr::id("UNDECLARED")), Prop::False);
    }

    #[test]
    fn variable_equality_is_marked() {
        assert_eq!(
            rw(Expr::eq(Atom::id("X"), Atom::id("Y"))),
            Prop::equality(Prop::var("X"), Prop::var("Y"))
        );
        assert_eq!(
            rw(Expr::neq(Atom::id("X"), Atom::id("Y"))),
            Prop::not(Prop::equality(Prop::var("X"), Prop::var("Y")))
        );
    }

    #[test]
    fn literal_comparisons() {
        assert_eq!(rw(Expr::eq(Atom::id("X"), Tri::Y)), Prop::var("X"));
        assert_eq!(rw(Expr::eq(Atom::id("X"), Tri::M)), Prop::var("X"));
        assert_eq!(rw(Expr::eq(Tri::N, Atom::id("X"))), Prop::not(Prop::var("X")));
        assert_eq!(rw(Expr::eq(Atom::id("B"), Tri::N)), Prop::not(Prop::var("B")));
        assert_eq!(rw(Expr::eq(Atom::id("B"), Tri::M)), Prop::False);
        assert_eq!(rw(Expr::neq(Atom::id("B"), Tri::Y)), Prop::not(Prop::var("B")));
        assert_eq!(rw(Expr::eq(Atom::id("S"), Const::str("x"))), Prop::var("S"));
        assert_eq!(
            rw(Expr::eq(Atom::id("S"), Const::empty_str())),
            Prop::not(Prop::var("S"))
        );
        assert_eq!(rw(Expr::eq(Atom::id("I"), Const::Int(0))), Prop::var("I"));
        assert_eq!(rw(Expr::eq(Atom::id("I"), Const::str("07"))), Prop::False);
        assert_eq!(rw(Expr::eq(Atom::id("H"), Const::Hex("ff".into()))), Prop::var("H"));
        assert_eq!(rw(Expr::eq(Atom::id("H"), Const::Int(3))), Prop::False);
        // undeclared identifiers compare as their own name
        assert_eq!(rw(Expr::eq(Atom::id("X"), Atom::id("GHOST"))), Prop::False);
    }

    #[test]
    fn literal_against_literal_follows_polarity() {
        let m = model();
        let e = Expr::eq(Const::Int(1), Const::Int(2));
        let (p, d) = rewrite_expr(&e, &m);
        assert_eq!(p, Prop::True);
        assert_eq!(d.len(), 1);
        assert!(d[0].to_string().contains("1 = 2"));

        let mut r = Rewriter::new(&m);
        r.set_context("config X select-expr");
        assert_eq!(r.rewrite(&e, Polarity::Negative), Prop::False);
        // negation flips the position back to positive
        assert_eq!(
            r.rewrite(&Expr::not(e.clone()), Polarity::Negative),
            Prop::not(Prop::True)
        );
        assert_eq!(r.diagnostics().len(), 2);
        assert!(r.diagnostics()[0].context.starts_with("config X"));
    }

    #[test]
    fn structure_is_preserved() {
        let e = Expr::or(Expr::not(Expr::id("X")), Expr::and(Expr::id("B"), Expr::y()));
        assert_eq!(
            rw(e),
            Prop::or2(Prop::not(Prop::var("X")), Prop::and2(Prop::var("B"), Prop::True))
        );
    }
}
