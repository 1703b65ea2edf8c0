//! Brute-force enumeration of valid configurations over a finite value universe.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::eval::Configuration;
use crate::model::{Atom, Bound, ConfigType, Const, Model, Tri};
use crate::semantics::{SemanticsError, Validator};

/// Default cap on the number of assignments enumeration may visit.
pub const DEFAULT_CAP: u64 = 10_000_000;

const CHUNK: u128 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration needs {required} assignments, above the cap of {cap}; raise the cap to at least {required}")]
    CapExceeded { required: u128, cap: u64 },
    #[error("enumeration needs more than 2^128 assignments")]
    Overflow,
    #[error("value universe does not match the model: {0}")]
    Coverage(#[from] SemanticsError),
}

/// Finite candidate values per identifier.
///
/// Candidates are kept sorted: ⊥, then tristate ascending, then strings, hex
/// digits and integers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValueUniverse {
    candidates: BTreeMap<String, Vec<Option<Const>>>,
}

impl ValueUniverse {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces the candidates of `name`.
    pub fn set(&mut self, name: impl Into<String>, values: impl IntoIterator<Item = Option<Const>>) {
        let mut v: Vec<_> = values.into_iter().collect();
        v.sort();
        v.dedup();
        self.candidates.insert(name.into(), v);
    }

    pub fn candidates(&self, name: &str) -> Option<&[Option<Const>]> {
        self.candidates.get(name).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[Option<Const>])> {
        self.candidates.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Number of assignments in the product, `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        self.candidates
            .values()
            .try_fold(1u128, |acc, v| acc.checked_mul(v.len() as u128))
    }

    /// The default universe of a model.
    ///
    /// Booleans range over {n, y}, tristates over {n, m, y}, undeclared
    /// identifiers over {⊥}. Int and hex configs get the unset value, every
    /// constant of their kind in the model and each literal range endpoint
    /// ±1. String configs get the empty string, every string constant in the
    /// model and one sentinel that occurs nowhere.
    pub fn for_model(model: &Model) -> ValueUniverse {
        let consts = ModelConstants::collect(model);
        let mut u = ValueUniverse::new();
        for name in model.universe() {
            let values: Vec<Option<Const>> = match model.type_of(name) {
                None => vec![None],
                Some(ConfigType::Boolean) => vec![Some(Tri::N.into()), Some(Tri::Y.into())],
                Some(ConfigType::Tristate) => Tri::ALL.iter().map(|t| Some((*t).into())).collect(),
                Some(ConfigType::Int) => std::iter::once(Const::empty_str())
                    .chain(consts.ints.iter().map(|i| Const::Int(*i)))
                    .map(Some)
                    .collect(),
                Some(ConfigType::Hex) => std::iter::once(Const::empty_str())
                    .chain(consts.hexes.iter().map(|h| Const::Hex(h.clone())))
                    .map(Some)
                    .collect(),
                Some(ConfigType::String) => std::iter::once(String::new())
                    .chain(consts.strings.iter().cloned())
                    .chain(std::iter::once(consts.sentinel()))
                    .map(|s| Some(Const::Str(s)))
                    .collect(),
            };
            u.set(name, values);
        }
        u
    }
}

#[derive(Default)]
struct ModelConstants {
    ints: BTreeSet<i64>,
    hexes: BTreeSet<String>,
    strings: BTreeSet<String>,
}

impl ModelConstants {
    fn collect(model: &Model) -> Self {
        let mut out = ModelConstants::default();
        for e in model.expressions() {
            e.for_each_atom(&mut |a| {
                if let Atom::Const(c) = a {
                    out.add(c);
                }
            });
        }
        for cfg in model.configs() {
            for r in &cfg.ranges {
                for b in [&r.lower, &r.upper] {
                    match b {
                        Bound::Int(i) => {
                            out.ints
                                .extend([i.checked_sub(1), Some(*i), i.checked_add(1)].into_iter().flatten());
                        }
                        Bound::Hex(h) => out.add_hex_neighbours(h),
                        Bound::Id(_) => {}
                    }
                }
            }
        }
        out
    }

    fn add(&mut self, c: &Const) {
        match c {
            Const::Int(i) => {
                self.ints.insert(*i);
            }
            Const::Hex(h) => {
                self.hexes.insert(h.clone());
            }
            Const::Str(s) => {
                self.strings.insert(s.clone());
                // strings that render like a number compare equal to one
                if let Ok(i) = s.parse::<i64>() {
                    if i.to_string() == *s {
                        self.ints.insert(i);
                    }
                }
                if let Some(Const::Hex(h)) = s.strip_prefix("0x").and_then(Const::hex) {
                    self.hexes.insert(h);
                }
            }
            Const::Tri(_) => {}
        }
    }

    fn add_hex_neighbours(&mut self, h: &str) {
        self.hexes.insert(h.to_string());
        let Ok(v) = u128::from_str_radix(h, 16) else {
            return;
        };
        let upper = h.bytes().any(|b| b.is_ascii_uppercase());
        for n in [v.checked_sub(1), v.checked_add(1)].into_iter().flatten() {
            self.hexes
                .insert(if upper { format!("{n:X}") } else { format!("{n:x}") });
        }
    }

    fn sentinel(&self) -> String {
        let mut s = String::from("<other>");
        while self.strings.contains(&s) {
            s.push('_');
        }
        s
    }
}

/// All valid configurations in the product of `universe`, in lexicographic
/// order: identifiers sorted, the first one most significant, candidates in
/// universe order.
pub fn enumerate(model: &Model, universe: &ValueUniverse, cap: u64) -> Result<Vec<Configuration>, EnumerateError> {
    let model_ids = model.universe();
    if let Some(missing) = model_ids.iter().find(|n| universe.candidates(n).is_none()) {
        return Err(SemanticsError::MissingIdentifier(missing.to_string()).into());
    }
    if let Some((extra, _)) = universe.iter().find(|(n, _)| !model_ids.contains(n)) {
        return Err(SemanticsError::UnknownIdentifier(extra.to_string()).into());
    }
    let total = universe.size().ok_or(EnumerateError::Overflow)?;
    if total > u128::from(cap) {
        return Err(EnumerateError::CapExceeded { required: total, cap });
    }

    let axes: Vec<(&str, &[Option<Const>])> = universe.iter().collect();
    let validator = Validator::new(model);
    let chunks = total.div_ceil(CHUNK);
    let found: Vec<Vec<Configuration>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let start = k * CHUNK;
            let end = (start + CHUNK).min(total);
            scan(&axes, &validator, start, end)
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn scan(axes: &[(&str, &[Option<Const>])], validator: &Validator<'_>, start: u128, end: u128) -> Vec<Configuration> {
    // mixed-radix digits, last axis least significant
    let mut digits = vec![0usize; axes.len()];
    let mut rest = start;
    for (i, (_, vals)) in axes.iter().enumerate().rev() {
        let radix = vals.len() as u128;
        digits[i] = (rest % radix) as usize;
        rest /= radix;
    }
    let mut c: Configuration = axes
        .iter()
        .zip(&digits)
        .map(|((name, vals), d)| (*name, vals[*d].clone()))
        .collect();

    let mut out = Vec::new();
    for idx in start..end {
        if validator.is_valid(&c) {
            out.push(c.clone());
        }
        if idx + 1 == end {
            break;
        }
        for i in (0..axes.len()).rev() {
            let (name, vals) = axes[i];
            digits[i] += 1;
            let carry = digits[i] == vals.len();
            if carry {
                digits[i] = 0;
            }
            *c.get_mut(name).expect("axis present") = vals[digits[i]].clone();
            if !carry {
                break;
            }
        }
    }
    out
}
