//! DIMACS CNF output.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use super::cnf::{to_cnf, CnfError};
use super::Prop;
use crate::model::Model;

/// Declared configs numbered `1..=k` in name order.
pub fn numbering_for(model: &Model) -> BTreeMap<String, u32> {
    model
        .declared_ids()
        .into_iter()
        .zip(1..)
        .map(|(name, i)| (name.to_string(), i))
        .collect()
}

/// A clause list over numbered variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfDoc {
    pub numbering: BTreeMap<String, u32>,
    /// Each clause sorted by variable, no duplicates.
    pub clauses: Vec<Vec<i32>>,
}

impl CnfDoc {
    /// Converts `f` by distribution. Repeated clauses keep their first
    /// position.
    pub fn new(f: &Prop, numbering: &BTreeMap<String, u32>, cap: usize) -> Result<CnfDoc, CnfError> {
        let mut seen = HashSet::new();
        let mut clauses = Vec::new();
        for c in to_cnf(f, cap)? {
            let mut lits = c
                .lits
                .iter()
                .map(|l| {
                    let n = *numbering
                        .get(&l.var)
                        .ok_or_else(|| CnfError::UnknownVariable(l.var.clone()))?;
                    let n = n as i32;
                    Ok(if l.positive { n } else { -n })
                })
                .collect::<Result<Vec<i32>, CnfError>>()?;
            lits.sort_by_key(|l| l.unsigned_abs());
            if seen.insert(lits.clone()) {
                clauses.push(lits);
            }
        }
        Ok(CnfDoc {
            numbering: numbering.clone(),
            clauses,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.numbering.len()
    }

    pub fn to_dimacs(&self) -> String {
        let mut by_number: Vec<(&u32, &String)> = self.numbering.iter().map(|(k, v)| (v, k)).collect();
        by_number.sort();
        let mut out = String::new();
        for (n, name) in by_number {
            let _ = writeln!(out, "c {name} {n}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars(), self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

pub fn emit_dimacs(f: &Prop, numbering: &BTreeMap<String, u32>, cap: usize) -> Result<String, CnfError> {
    Ok(CnfDoc::new(f, numbering, cap)?.to_dimacs())
}
