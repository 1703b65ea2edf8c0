//! Denotational semantics for a core subset of Kconfig.
//!
//! A [`Model`] declares configs and choices. A [`Configuration`] assigns a
//! value to every identifier the model mentions, and [`validate`] decides
//! whether it is one the model admits. [`enumerate`] lists all admitted
//! configurations over a finite [`ValueUniverse`], and [`prop`] abstracts the
//! model to a propositional formula with one variable per config.

pub mod enumerate;
pub mod eval;
pub mod io;
pub mod model;
pub mod prop;
pub mod semantics;
pub mod wf;

pub use enumerate::{enumerate, EnumerateError, ValueUniverse, DEFAULT_CAP};
pub use eval::{eval, Configuration};
pub use io::{parse_config, parse_expr, parse_model, serialize_config, serialize_model, ParseError, ParseErrors};
pub use model::{
    Atom, Bound, Choice, ChoiceType, Config, ConfigType, Const, DefaultEntry, Expr, Model, ModelError, RangeEntry, Tri,
    MODULES,
};
pub use semantics::{validate, Denotation, ValidationReport, Validator, Verdict};
pub use wf::{check_well_formed, Rule, Violation};
