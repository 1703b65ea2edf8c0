//! Abstract syntax of a Kconfig model: values, expressions, configs and choices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Name of the config that gates the `m` state model-wide.
pub const MODULES: &str = "MODULES";

/// A tristate value. Ordered `N < M < Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tri {
    N = 0,
    M = 1,
    Y = 2,
}

impl Tri {
    pub const ALL: [Tri; 3] = [Tri::N, Tri::M, Tri::Y];

    /// `y - self`.
    pub fn complement(self) -> Tri {
        match self {
            Tri::N => Tri::Y,
            Tri::M => Tri::M,
            Tri::Y => Tri::N,
        }
    }

    /// Boolean interpretation: only `n` is false.
    pub fn truthy(self) -> bool {
        self != Tri::N
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Tri::N => "n",
            Tri::M => "m",
            Tri::Y => "y",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Tri> {
        match s {
            "n" => Some(Tri::N),
            "m" => Some(Tri::M),
            "y" => Some(Tri::Y),
            _ => None,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A constant value. The four domains are disjoint.
///
/// The derived ordering (tristate, then string, then hex, then int) is the
/// candidate order used by enumeration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Const {
    Tri(Tri),
    Str(String),
    /// Hex digits without the `0x` prefix, case preserved.
    Hex(String),
    Int(i64),
}

impl Const {
    pub fn str(s: impl Into<String>) -> Const {
        Const::Str(s.into())
    }

    pub fn empty_str() -> Const {
        Const::Str(String::new())
    }

    /// Builds a hex constant, accepting an optional `0x` prefix.
    pub fn hex(digits: &str) -> Option<Const> {
        let digits = digits
            .strip_prefix("0x")
            .or_else(|| digits.strip_prefix("0X"))
            .unwrap_or(digits);
        is_hex_digits(digits).then(|| Const::Hex(digits.to_string()))
    }

    pub fn as_tri(&self) -> Option<Tri> {
        match self {
            Const::Tri(t) => Some(*t),
            _ => None,
        }
    }

    /// The string rendering used by equality comparisons.
    pub fn render(&self) -> String {
        match self {
            Const::Tri(t) => t.symbol().to_string(),
            Const::Str(s) => s.clone(),
            Const::Hex(h) => format!("0x{h}"),
            Const::Int(i) => i.to_string(),
        }
    }
}

impl From<Tri> for Const {
    fn from(t: Tri) -> Self {
        Const::Tri(t)
    }
}

pub(crate) fn is_hex_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_hexdigit())
}

/// An expression leaf: an identifier or a constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Id(String),
    Const(Const),
}

impl Atom {
    pub fn id(name: impl Into<String>) -> Atom {
        Atom::Id(name.into())
    }

    pub fn as_id(&self) -> Option<&str> {
        match self {
            Atom::Id(n) => Some(n),
            Atom::Const(_) => None,
        }
    }
}

impl From<Tri> for Atom {
    fn from(t: Tri) -> Self {
        Atom::Const(Const::Tri(t))
    }
}

impl From<Const> for Atom {
    fn from(c: Const) -> Self {
        Atom::Const(c)
    }
}

/// A Kconfig expression. Comparison operands are always leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Or(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Eq(Atom, Atom),
    Neq(Atom, Atom),
    Leaf(Atom),
}

impl Expr {
    pub fn tri(t: Tri) -> Expr {
        Expr::Leaf(Atom::from(t))
    }

    pub fn n() -> Expr {
        Expr::tri(Tri::N)
    }

    pub fn y() -> Expr {
        Expr::tri(Tri::Y)
    }

    pub fn id(name: impl Into<String>) -> Expr {
        Expr::Leaf(Atom::id(name))
    }

    pub fn constant(c: Const) -> Expr {
        Expr::Leaf(Atom::Const(c))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    pub fn eq(a: impl Into<Atom>, b: impl Into<Atom>) -> Expr {
        Expr::Eq(a.into(), b.into())
    }

    pub fn neq(a: impl Into<Atom>, b: impl Into<Atom>) -> Expr {
        Expr::Neq(a.into(), b.into())
    }

    /// True iff this is the literal constant `n`.
    pub fn is_const_n(&self) -> bool {
        matches!(self, Expr::Leaf(Atom::Const(Const::Tri(Tri::N))))
    }

    pub fn as_leaf(&self) -> Option<&Atom> {
        match self {
            Expr::Leaf(a) => Some(a),
            _ => None,
        }
    }

    /// Visits every leaf and comparison operand.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Expr::Or(a, b) | Expr::And(a, b) => {
                a.for_each_atom(f);
                b.for_each_atom(f);
            }
            Expr::Not(e) => e.for_each_atom(f),
            Expr::Eq(x, y) | Expr::Neq(x, y) => {
                f(x);
                f(y);
            }
            Expr::Leaf(a) => f(a),
        }
    }

    pub fn identifiers(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |a| {
            if let Atom::Id(n) = a {
                out.insert(n.as_str());
            }
        });
        out
    }
}

impl From<Atom> for Expr {
    fn from(a: Atom) -> Self {
        Expr::Leaf(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigType {
    Boolean,
    Tristate,
    Int,
    Hex,
    String,
}

impl ConfigType {
    pub const ALL: [ConfigType; 5] = [
        ConfigType::Boolean,
        ConfigType::Tristate,
        ConfigType::Int,
        ConfigType::Hex,
        ConfigType::String,
    ];

    /// Boolean and tristate configs take tristate values; the rest are entry types.
    pub fn is_tri(self) -> bool {
        matches!(self, ConfigType::Boolean | ConfigType::Tristate)
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, ConfigType::Int | ConfigType::Hex)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            ConfigType::Boolean => "boolean",
            ConfigType::Tristate => "tristate",
            ConfigType::Int => "int",
            ConfigType::Hex => "hex",
            ConfigType::String => "string",
        }
    }

    pub fn from_keyword(s: &str) -> Option<ConfigType> {
        ConfigType::ALL.into_iter().find(|t| t.keyword() == s)
    }
}

impl fmt::Display for ConfigType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A default entry: the value expression applies when `cond` holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefaultEntry {
    pub value: Expr,
    pub cond: Expr,
}

impl DefaultEntry {
    pub fn new(value: Expr, cond: Expr) -> Self {
        DefaultEntry { value, cond }
    }
}

/// A range endpoint. Tristate and string constants cannot appear here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Int(i64),
    Hex(String),
    Id(String),
}

impl Bound {
    pub fn to_atom(&self) -> Atom {
        match self {
            Bound::Int(i) => Atom::Const(Const::Int(*i)),
            Bound::Hex(h) => Atom::Const(Const::Hex(h.clone())),
            Bound::Id(n) => Atom::Id(n.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RangeEntry {
    pub lower: Bound,
    pub upper: Bound,
    pub cond: Expr,
}

impl RangeEntry {
    pub fn new(lower: Bound, upper: Bound, cond: Expr) -> Self {
        RangeEntry { lower, upper, cond }
    }
}

/// A config declaration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    pub name: String,
    pub ty: ConfigType,
    /// Visibility: the config is user-changeable when this holds.
    pub prompt: Expr,
    /// Ordered; the first entry whose condition holds wins.
    pub defaults: Vec<DefaultEntry>,
    /// Reverse dependency (all `select`s targeting this config).
    pub rev: Expr,
    pub ranges: Vec<RangeEntry>,
}

impl Config {
    /// A config with prompt `n`, no defaults, reverse dependency `n` and no ranges.
    pub fn new(name: impl Into<String>, ty: ConfigType) -> Self {
        Config {
            name: name.into(),
            ty,
            prompt: Expr::n(),
            defaults: Vec::new(),
            rev: Expr::n(),
            ranges: Vec::new(),
        }
    }

    pub fn with_prompt(mut self, prompt: Expr) -> Self {
        self.prompt = prompt;
        self
    }

    pub fn with_default(mut self, value: Expr, cond: Expr) -> Self {
        self.defaults.push(DefaultEntry::new(value, cond));
        self
    }

    pub fn with_rev(mut self, rev: Expr) -> Self {
        self.rev = rev;
        self
    }

    pub fn with_range(mut self, lower: Bound, upper: Bound, cond: Expr) -> Self {
        self.ranges.push(RangeEntry::new(lower, upper, cond));
        self
    }

    fn expressions(&self) -> impl Iterator<Item = &Expr> {
        std::iter::once(&self.prompt)
            .chain(std::iter::once(&self.rev))
            .chain(self.defaults.iter().flat_map(|d| [&d.value, &d.cond]))
            .chain(self.ranges.iter().map(|r| &r.cond))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChoiceType {
    Boolean,
    Tristate,
}

impl ChoiceType {
    pub fn keyword(self) -> &'static str {
        match self {
            ChoiceType::Boolean => "boolean",
            ChoiceType::Tristate => "tristate",
        }
    }
}

/// A choice: declares no symbol but constrains its members.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Choice {
    pub ty: ChoiceType,
    pub mandatory: bool,
    pub prompt: Expr,
    pub members: BTreeSet<String>,
}

impl Choice {
    pub fn new<I, S>(ty: ChoiceType, mandatory: bool, prompt: Expr, members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Choice {
            ty,
            mandatory,
            prompt,
            members: members.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("config `{0}` is declared more than once")]
    DuplicateConfig(String),
    #[error("default #{index} of {ty} config `{name}` must be a single identifier or constant")]
    NonLeafEntryDefault { name: String, ty: ConfigType, index: usize },
}

/// A Kconfig model: configs keyed by their unique name, plus choices.
///
/// Immutable once built.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    configs: BTreeMap<String, Config>,
    choices: Vec<Choice>,
}

impl Model {
    pub fn new(
        configs: impl IntoIterator<Item = Config>,
        choices: impl IntoIterator<Item = Choice>,
    ) -> Result<Model, ModelError> {
        let mut map = BTreeMap::new();
        for cfg in configs {
            if !cfg.ty.is_tri() {
                if let Some(index) = cfg.defaults.iter().position(|d| d.value.as_leaf().is_none()) {
                    return Err(ModelError::NonLeafEntryDefault {
                        name: cfg.name,
                        ty: cfg.ty,
                        index,
                    });
                }
            }
            if map.contains_key(&cfg.name) {
                return Err(ModelError::DuplicateConfig(cfg.name));
            }
            map.insert(cfg.name.clone(), cfg);
        }
        Ok(Model {
            configs: map,
            choices: choices.into_iter().collect(),
        })
    }

    pub fn empty() -> Model {
        Model::default()
    }

    /// Configs in name order.
    pub fn configs(&self) -> impl Iterator<Item = &Config> {
        self.configs.values()
    }

    pub fn config(&self, name: &str) -> Option<&Config> {
        self.configs.get(name)
    }

    pub fn choices(&self) -> &[Choice] {
        &self.choices
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.configs.contains_key(name)
    }

    pub fn type_of(&self, name: &str) -> Option<ConfigType> {
        self.configs.get(name).map(|c| c.ty)
    }

    pub fn declared_ids(&self) -> BTreeSet<&str> {
        self.configs.keys().map(String::as_str).collect()
    }

    /// Identifiers appearing anywhere in the model: expressions, range
    /// endpoints and choice members.
    pub fn referenced_ids(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for cfg in self.configs.values() {
            for e in cfg.expressions() {
                out.extend(e.identifiers());
            }
            for r in &cfg.ranges {
                for b in [&r.lower, &r.upper] {
                    if let Bound::Id(n) = b {
                        out.insert(n.as_str());
                    }
                }
            }
        }
        for ch in &self.choices {
            out.extend(ch.prompt.identifiers());
            out.extend(ch.members.iter().map(String::as_str));
        }
        out
    }

    /// Every identifier a configuration of this model assigns: declared ∪ referenced.
    pub fn universe(&self) -> BTreeSet<&str> {
        let mut u = self.declared_ids();
        u.extend(self.referenced_ids());
        u
    }

    /// Referenced identifiers that are not declared.
    pub fn undeclared_ids(&self) -> BTreeSet<&str> {
        self.referenced_ids()
            .into_iter()
            .filter(|n| !self.is_declared(n))
            .collect()
    }

    /// Every expression in the model, including choice prompts.
    pub fn expressions(&self) -> impl Iterator<Item = &Expr> {
        self.configs
            .values()
            .flat_map(Config::expressions)
            .chain(self.choices.iter().map(|c| &c.prompt))
    }
}
