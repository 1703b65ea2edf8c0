//! Clause-form conversion by plain distribution (no auxiliary variables).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::Prop;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause form exceeds {cap} clauses; reduce the model or raise the cap")]
    TooLarge { cap: usize },
    #[error("variable `{0}` has no number")]
    UnknownVariable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: String,
    pub positive: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        f.write_str(&self.var)
    }
}

/// A disjunction of literals. Empty means false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub lits: BTreeSet<Literal>,
    /// Produced (at least partly) by expanding an equality biconditional.
    pub from_equality: bool,
}

impl Clause {
    fn unit(var: &str, positive: bool, from_equality: bool) -> Clause {
        Clause {
            lits: BTreeSet::from([Literal {
                var: var.to_string(),
                positive,
            }]),
            from_equality,
        }
    }

    fn empty() -> Clause {
        Clause {
            lits: BTreeSet::new(),
            from_equality: false,
        }
    }

    /// Disjunction of two clauses; `None` if it is a tautology.
    fn join(&self, other: &Clause) -> Option<Clause> {
        let mut lits = self.lits.clone();
        for l in &other.lits {
            let neg = Literal {
                var: l.var.clone(),
                positive: !l.positive,
            };
            if lits.contains(&neg) {
                return None;
            }
            lits.insert(l.clone());
        }
        Some(Clause {
            lits,
            from_equality: self.from_equality || other.from_equality,
        })
    }

    pub fn to_prop(&self) -> Prop {
        Prop::or_all(
            self.lits
                .iter()
                .map(|l| {
                    let v = Prop::var(l.var.clone());
                    if l.positive {
                        v
                    } else {
                        Prop::not(v)
                    }
                })
                .collect(),
        )
    }
}

struct Converter {
    cap: usize,
}

impl Converter {
    /// Clauses of `p` (or of `!p` when `positive` is false). `eq` is set
    /// inside the expansion of an equality biconditional.
    fn clauses(&self, p: &Prop, positive: bool, eq: bool) -> Result<Vec<Clause>, CnfError> {
        match (p, positive) {
            (Prop::True, true) | (Prop::False, false) => Ok(Vec::new()),
            (Prop::True, false) | (Prop::False, true) => Ok(vec![Clause::empty()]),
            (Prop::Var(v), pos) => Ok(vec![Clause::unit(v, pos, eq)]),
            (Prop::Not(inner), pos) => self.clauses(inner, !pos, eq),
            (Prop::And(ps), true) => self.conj(ps.iter().map(|p| (p, true)), eq),
            (Prop::Or(ps), false) => self.conj(ps.iter().map(|p| (p, false)), eq),
            (Prop::Or(ps), true) => self.disj(ps.iter().map(|p| (p, true)), eq),
            (Prop::And(ps), false) => self.disj(ps.iter().map(|p| (p, false)), eq),
            (Prop::Implies(a, b), true) => self.disj([(&**a, false), (&**b, true)], eq),
            (Prop::Implies(a, b), false) => self.conj([(&**a, true), (&**b, false)], eq),
            (
                Prop::Iff {
                    lhs,
                    rhs,
                    from_equality,
                },
                pos,
            ) => {
                let eq = eq || *from_equality;
                let (a, b) = (&**lhs, &**rhs);
                if pos {
                    // (!a | b) & (a | !b)
                    let mut out = self.disj([(a, false), (b, true)], eq)?;
                    out.extend(self.disj([(a, true), (b, false)], eq)?);
                    self.check(out)
                } else {
                    // (a | b) & (!a | !b)
                    let mut out = self.disj([(a, true), (b, true)], eq)?;
                    out.extend(self.disj([(a, false), (b, false)], eq)?);
                    self.check(out)
                }
            }
        }
    }

    fn conj<'a>(&self, parts: impl IntoIterator<Item = (&'a Prop, bool)>, eq: bool) -> Result<Vec<Clause>, CnfError> {
        let mut out = Vec::new();
        for (p, pos) in parts {
            out.extend(self.clauses(p, pos, eq)?);
            if out.len() > self.cap {
                return Err(CnfError::TooLarge { cap: self.cap });
            }
        }
        Ok(out)
    }

    fn disj<'a>(&self, parts: impl IntoIterator<Item = (&'a Prop, bool)>, eq: bool) -> Result<Vec<Clause>, CnfError> {
        let mut acc = vec![Clause::empty()];
        for (p, pos) in parts {
            let rhs = self.clauses(p, pos, eq)?;
            let mut next = Vec::new();
            for a in &acc {
                for b in &rhs {
                    if let Some(c) = a.join(b) {
                        next.push(c);
                    }
                }
                if next.len() > self.cap {
                    return Err(CnfError::TooLarge { cap: self.cap });
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        Ok(acc)
    }

    fn check(&self, out: Vec<Clause>) -> Result<Vec<Clause>, CnfError> {
        if out.len() > self.cap {
            Err(CnfError::TooLarge { cap: self.cap })
        } else {
            Ok(out)
        }
    }
}

/// Clause form of `p`, tautologies removed, at most `cap` clauses.
pub fn to_cnf(p: &Prop, cap: usize) -> Result<Vec<Clause>, CnfError> {
    Converter { cap }.clauses(p, true, false)
}

/// Converts to clause form and drops the clauses that come from equality
/// biconditionals. The result is implied by the input.
pub fn relax(p: &Prop, cap: usize) -> Result<Prop, CnfError> {
    let kept: Vec<Prop> = to_cnf(p, cap)?
        .iter()
        .filter(|c| !c.from_equality)
        .map(Clause::to_prop)
        .collect();
    Ok(Prop::and_all(kept))
}
