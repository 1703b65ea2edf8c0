//! Generators for models, expressions and configurations.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::{select, subsequence};
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

use kconfig_sem::prop::Prop;
use kconfig_sem::Tri;
use kconfig_sem::{
    Atom, Bound, Choice, ChoiceType, Config, ConfigType, Configuration, Const, Expr, Model, ValueUniverse,
};

pub const NAMES: [&str; 4] = ["A", "B", "C", "D"];
pub const UNDECLARED: &str = "U";

/// `n` values drawn from a fixed-seed runner.
pub fn samples<S: Strategy>(s: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n).map(|_| s.new_tree(&mut runner).unwrap().current()).collect()
}

pub fn tri() -> impl Strategy<Value = Tri> {
    select(Tri::ALL.to_vec())
}

pub fn constant() -> impl Strategy<Value = Const> {
    prop_oneof![
        3 => tri().prop_map(Const::Tri),
        1 => (-2i64..20).prop_map(Const::Int),
        1 => select(vec!["", "x", "y", "0x1", "3"]).prop_map(Const::str),
        1 => select(vec!["1", "fF", "10"]).prop_map(|h| Const::Hex(h.to_string())),
    ]
}

pub fn atom(ids: Vec<&'static str>) -> impl Strategy<Value = Atom> {
    prop_oneof![
        2 => select(ids).prop_map(Atom::id),
        1 => constant().prop_map(Atom::Const),
    ]
}

pub fn expr(ids: Vec<&'static str>) -> BoxedStrategy<Expr> {
    let leaf = atom(ids.clone()).prop_map(Expr::Leaf);
    let cmp = (atom(ids.clone()), atom(ids), any::<bool>())
        .prop_map(|(a, b, eq)| if eq { Expr::eq(a, b) } else { Expr::neq(a, b) });
    prop_oneof![3 => leaf, 1 => cmp]
        .prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Expr::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::or(a, b)),
            ]
        })
        .boxed()
}

fn condition(ids: Vec<&'static str>) -> BoxedStrategy<Expr> {
    prop_oneof![1 => Just(Expr::y()), 2 => expr(ids)].boxed()
}

fn bound(ids: Vec<&'static str>) -> impl Strategy<Value = Bound> {
    prop_oneof![
        2 => (-1i64..10).prop_map(Bound::Int),
        1 => select(vec!["1", "a", "F"]).prop_map(|h| Bound::Hex(h.to_string())),
        1 => select(ids).prop_map(|n| Bound::Id(n.to_string())),
    ]
}

fn config(name: &'static str, ty: ConfigType, ids: Vec<&'static str>) -> BoxedStrategy<Config> {
    let value = if ty.is_tri() {
        expr(ids.clone())
    } else {
        atom(ids.clone()).prop_map(Expr::Leaf).boxed()
    };
    let defaults = vec((value, condition(ids.clone())), 0..=2);
    let rev = if ty.is_tri() {
        prop_oneof![2 => Just(Expr::n()), 1 => expr(ids.clone())].boxed()
    } else {
        Just(Expr::n()).boxed()
    };
    let ranges = if ty.is_numeric() {
        vec((bound(ids.clone()), bound(ids.clone()), condition(ids.clone())), 0..=1).boxed()
    } else {
        Just(Vec::new()).boxed()
    };
    (condition(ids), defaults, rev, ranges)
        .prop_map(move |(prompt, defaults, rev, ranges)| {
            let mut c = Config::new(name, ty).with_prompt(prompt).with_rev(rev);
            for (v, cond) in defaults {
                c = c.with_default(v, cond);
            }
            for (l, u, cond) in ranges {
                c = c.with_range(l, u, cond);
            }
            c
        })
        .boxed()
}

fn choice(names: Vec<&'static str>, ids: Vec<&'static str>) -> impl Strategy<Value = Choice> {
    let k = names.len();
    (
        select(vec![ChoiceType::Boolean, ChoiceType::Tristate]),
        any::<bool>(),
        condition(ids),
        subsequence(names, 0..=k),
    )
        .prop_map(|(ty, mandatory, prompt, members)| Choice::new(ty, mandatory, prompt, members))
}

/// Small well-formed models over `A..D`, referencing the undeclared `U`.
pub fn model() -> BoxedStrategy<Model> {
    (1usize..=4, vec(select(ConfigType::ALL.to_vec()), 4))
        .prop_flat_map(|(k, types)| {
            let names: Vec<&'static str> = NAMES[..k].to_vec();
            let mut ids = names.clone();
            ids.push(UNDECLARED);
            let configs: Vec<BoxedStrategy<Config>> = names
                .iter()
                .zip(&types)
                .map(|(n, ty)| config(n, *ty, ids.clone()))
                .collect();
            (configs, vec(choice(names, ids), 0..=1))
        })
        .prop_map(|(configs, choices)| Model::new(configs, choices).expect("generated model"))
        .boxed()
}

/// Any value of any domain, including text that needs escaping.
pub fn any_value() -> impl Strategy<Value = Option<Const>> {
    prop_oneof![
        1 => Just(None),
        2 => tri().prop_map(|t| Some(Const::Tri(t))),
        1 => any::<i64>().prop_map(|i| Some(Const::Int(i))),
        1 => "[0-9a-fA-F]{1,6}".prop_map(|h| Some(Const::Hex(h))),
        1 => "[ -~]{0,6}".prop_map(|s| Some(Const::Str(s))),
    ]
}

/// A configuration assigning arbitrary values to the model universe.
pub fn any_configuration(model: &Model) -> BoxedStrategy<Configuration> {
    let names: Vec<String> = model.universe().into_iter().map(String::from).collect();
    vec(any_value(), names.len())
        .prop_map(move |vals| names.iter().cloned().zip(vals).collect())
        .boxed()
}

/// A configuration drawn from the candidate sets of `universe`.
pub fn universe_configuration(universe: &ValueUniverse) -> BoxedStrategy<Configuration> {
    let axes: Vec<(String, Vec<Option<Const>>)> = universe.iter().map(|(n, c)| (n.to_string(), c.to_vec())).collect();
    let parts: Vec<BoxedStrategy<(String, Option<Const>)>> = axes
        .into_iter()
        .map(|(n, c)| select(c).prop_map(move |v| (n.clone(), v)).boxed())
        .collect();
    parts.prop_map(|kv| kv.into_iter().collect()).boxed()
}

/// Expressions over declared boolean configs and the constants `n` and `y`,
/// with no comparison between two constants.
pub fn boolean_expr(ids: Vec<&'static str>, var_equality: bool) -> BoxedStrategy<Expr> {
    let k = || select(vec![Tri::N, Tri::Y]);
    let leaf = prop_oneof![
        2 => select(ids.clone()).prop_map(Expr::id),
        1 => k().prop_map(Expr::tri),
    ];
    let var_const = (select(ids.clone()), k(), any::<bool>(), any::<bool>()).prop_map(|(v, t, eq, flip)| {
        let (a, b): (Atom, Atom) = if flip {
            (Atom::from(t), Atom::id(v))
        } else {
            (Atom::id(v), Atom::from(t))
        };
        if eq {
            Expr::eq(a, b)
        } else {
            Expr::neq(a, b)
        }
    });
    let var_var = (select(ids.clone()), select(ids), any::<bool>()).prop_map(|(a, b, eq)| {
        if eq {
            Expr::eq(Atom::id(a), Atom::id(b))
        } else {
            Expr::neq(Atom::id(a), Atom::id(b))
        }
    });
    let base = if var_equality {
        prop_oneof![3 => leaf, 1 => var_const, 1 => var_var].boxed()
    } else {
        prop_oneof![3 => leaf, 1 => var_const].boxed()
    };
    base.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::or(a, b)),
        ]
    })
    .boxed()
}

/// Models with boolean configs only and no choices, in which every select
/// stays within the target's prompt (the prompt is widened to `p || rev`)
/// and select expressions compare no two variables.
pub fn boolean_fragment_model() -> BoxedStrategy<Model> {
    (1usize..=5)
        .prop_flat_map(|k| {
            let names: Vec<&'static str> = ["A", "B", "C", "D", "E"][..k].to_vec();
            let configs: Vec<BoxedStrategy<Config>> = names
                .iter()
                .map(|n| {
                    let n = *n;
                    (
                        boolean_expr(names.clone(), true),
                        prop_oneof![1 => Just(Expr::n()), 1 => boolean_expr(names.clone(), false)],
                        vec(
                            (boolean_expr(names.clone(), true), boolean_expr(names.clone(), true)),
                            0..=2,
                        ),
                    )
                        .prop_map(move |(p, rev, defaults)| {
                            let prompt = if rev.is_const_n() { p } else { Expr::or(p, rev.clone()) };
                            let mut c = Config::new(n, ConfigType::Boolean).with_prompt(prompt).with_rev(rev);
                            for (v, cond) in defaults {
                                c = c.with_default(v, cond);
                            }
                            c
                        })
                        .boxed()
                })
                .collect();
            configs
        })
        .prop_map(|configs| Model::new(configs, []).expect("generated model"))
        .boxed()
}

/// Propositional formulas over `vars`, some biconditionals marked as
/// equalities.
pub fn prop_formula(vars: Vec<String>) -> BoxedStrategy<Prop> {
    let leaf = prop_oneof![
        6 => select(vars).prop_map(Prop::Var),
        1 => Just(Prop::True),
        1 => Just(Prop::False),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Prop::not),
            vec(inner.clone(), 0..=3).prop_map(Prop::And),
            vec(inner.clone(), 0..=3).prop_map(Prop::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Prop::implies(a, b)),
            (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, eq)| Prop::Iff {
                lhs: Box::new(a),
                rhs: Box::new(b),
                from_equality: eq,
            }),
        ]
    })
    .boxed()
}

pub fn var_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("V{i}")).collect()
}
