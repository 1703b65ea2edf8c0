//! Configurations and expression evaluation.

use std::borrow::Cow;
use std::collections::BTreeMap;

use crate::model::{Atom, Const, Expr, Tri};

/// A total assignment over a model's identifier universe. `None` is ⊥, the
/// value carried by undeclared identifiers.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    values: BTreeMap<String, Option<Const>>,
}

impl Configuration {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: Option<Const>) {
        self.values.insert(name.into(), value);
    }

    pub fn with(mut self, name: impl Into<String>, value: impl Into<Const>) -> Self {
        self.set(name, Some(value.into()));
        self
    }

    pub fn with_bottom(mut self, name: impl Into<String>) -> Self {
        self.set(name, None);
        self
    }

    /// `None` if the identifier has no entry; `Some(None)` if it maps to ⊥.
    pub fn get(&self, name: &str) -> Option<&Option<Const>> {
        self.values.get(name)
    }

    pub(crate) fn get_mut(&mut self, name: &str) -> Option<&mut Option<Const>> {
        self.values.get_mut(name)
    }

    /// The value of `name`, treating a missing entry as ⊥.
    pub fn value(&self, name: &str) -> Option<&Const> {
        self.values.get(name).and_then(Option::as_ref)
    }

    pub fn tri(&self, name: &str) -> Option<Tri> {
        self.value(name).and_then(Const::as_tri)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries in identifier order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Option<&Const>)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_ref()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

impl<K: Into<String>> FromIterator<(K, Option<Const>)> for Configuration {
    fn from_iter<T: IntoIterator<Item = (K, Option<Const>)>>(iter: T) -> Self {
        Configuration {
            values: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

/// Boolean interpretation of a tristate value.
pub fn bool_interp(v: Tri) -> bool {
    v.truthy()
}

/// Value of a leaf. An identifier mapped to ⊥ yields its own name as a string.
///
/// # Panics
///
/// If `atom` is an identifier with no entry in `c`; configurations must cover
/// the model universe.
pub fn access<'a>(atom: &'a Atom, c: &'a Configuration) -> Cow<'a, Const> {
    match atom {
        Atom::Const(k) => Cow::Borrowed(k),
        Atom::Id(name) => match c.get(name) {
            Some(Some(v)) => Cow::Borrowed(v),
            Some(None) => Cow::Owned(Const::Str(name.clone())),
            None => panic!("identifier `{name}` has no entry in the configuration"),
        },
    }
}

/// String rendering of a constant: `n`/`m`/`y`, decimal ints, `0x`-prefixed hex.
pub fn to_str(v: &Const) -> String {
    v.render()
}

/// Evaluates an expression to a tristate value.
///
/// # Panics
///
/// If an identifier in `e` has no entry in `c`.
pub fn eval(e: &Expr, c: &Configuration) -> Tri {
    match e {
        Expr::Eq(x, y) => eq(x, y, c),
        Expr::Neq(x, y) => eq(x, y, c).complement(),
        Expr::Not(e) => eval(e, c).complement(),
        Expr::And(a, b) => eval(a, c).min(eval(b, c)),
        Expr::Or(a, b) => eval(a, c).max(eval(b, c)),
        Expr::Leaf(a) => access(a, c).as_tri().unwrap_or(Tri::N),
    }
}

fn eq(x: &Atom, y: &Atom, c: &Configuration) -> Tri {
    let (x, y) = (access(x, c), access(y, c));
    // same-tag values render equal iff they are equal; skip the allocation
    let same = match (&*x, &*y) {
        (Const::Tri(a), Const::Tri(b)) => a == b,
        (Const::Str(a), Const::Str(b)) => a == b,
        (Const::Hex(a), Const::Hex(b)) => a == b,
        (Const::Int(a), Const::Int(b)) => a == b,
        (a, b) => to_str(a) == to_str(b),
    };
    if same {
        Tri::Y
    } else {
        Tri::N
    }
}
