//! Cross-check of the abstraction against the exact semantics.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::clauses::{build_formula, ChooseEncoding, DEFAULT_CLAUSE_CAP};
use super::cnf::CnfError;
use super::rewrite::Diagnostic;
use super::{abstract_value, Prop};
use crate::enumerate::{enumerate, EnumerateError, ValueUniverse};
use crate::eval::Configuration;
use crate::io::config_one_line;
use crate::model::{ConfigType, Model};

/// Spurious solutions are only counted up to this many boolean configs.
const SPURIOUS_MAX_VARS: usize = 20;

#[derive(Debug, Error)]
pub enum SoundnessError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

#[derive(Debug, Clone)]
pub struct SoundnessReport {
    pub encoding: ChooseEncoding,
    /// Number of valid configurations checked.
    pub valid: usize,
    /// Valid configurations whose image falsifies the formula.
    pub violations: Vec<Configuration>,
    /// Satisfying assignments of the formula that are not the image of any
    /// valid configuration. Only computed for all-boolean models.
    pub spurious: Option<u64>,
    pub diagnostics: Vec<Diagnostic>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One `VIOLATION` line per violation, then `SPURIOUS` when counted.
impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.violations {
            writeln!(f, "VIOLATION {}", config_one_line(c))?;
        }
        if let Some(n) = self.spurious {
            writeln!(f, "SPURIOUS {n}")?;
        }
        Ok(())
    }
}

fn image(model: &Model, c: &Configuration) -> Vec<bool> {
    model
        .configs()
        .map(|cfg| abstract_value(cfg.ty, c.value(&cfg.name)))
        .collect()
}

fn holds(f: &Prop, names: &[&str], bits: &[bool]) -> bool {
    f.eval_with(&|v| names.iter().position(|n| *n == v).is_some_and(|i| bits[i]))
}

/// Enumerates the valid configurations and evaluates the abstraction on
/// each image.
pub fn check_soundness(
    model: &Model,
    universe: &ValueUniverse,
    cap: u64,
    encoding: ChooseEncoding,
) -> Result<SoundnessReport, SoundnessError> {
    let abstraction = build_formula(model, encoding, DEFAULT_CLAUSE_CAP)?;
    let f = &abstraction.formula;
    let valid = enumerate(model, universe, cap)?;
    let names: Vec<&str> = model.configs().map(|c| c.name.as_str()).collect();

    let mut images = BTreeSet::new();
    let mut violations = Vec::new();
    for c in &valid {
        let bits = image(model, c);
        if !holds(f, &names, &bits) {
            violations.push(c.clone());
        }
        images.insert(bits);
    }

    let all_boolean = model.configs().all(|c| c.ty == ConfigType::Boolean);
    let spurious = (all_boolean && names.len() <= SPURIOUS_MAX_VARS).then(|| {
        (0u64..1 << names.len())
            .map(|m| (0..names.len()).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|bits| holds(f, &names, bits) && !images.contains(bits))
            .count() as u64
    });

    Ok(SoundnessReport {
        encoding,
        valid: valid.len(),
        violations,
        spurious,
        diagnostics: abstraction.diagnostics,
    })
}
