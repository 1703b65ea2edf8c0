//! Synthetic model generators for benchmarks.

use kconfig_sem::{Choice, ChoiceType, Config, ConfigType, Configuration, Expr, Model, Tri};

/// Name of the `i`-th generated config.
pub fn name(i: usize) -> String {
    format!("C{i:03}")
}

/// `k` tristate configs, each prompted by its predecessor and selected by
/// its successor's enabling.
pub fn tristate_chain(k: usize) -> Model {
    let configs = (0..k).map(|i| {
        let prompt = if i == 0 { Expr::y() } else { Expr::id(name(i - 1)) };
        let mut c = Config::new(name(i), ConfigType::Tristate)
            .with_prompt(prompt)
            .with_default(Expr::tri(Tri::M), Expr::y());
        if i + 2 < k {
            c = c.with_rev(Expr::and(Expr::id(name(i + 1)), Expr::id(name(i + 2))));
        }
        c
    });
    Model::new(configs, []).expect("chain model")
}

/// `k` boolean configs with cross-referencing prompts, plus one optional
/// choice over the last three.
pub fn boolean_mesh(k: usize) -> Model {
    assert!(k >= 3, "mesh needs at least three configs");
    let configs = (0..k).map(|i| {
        let prompt = if i < 2 {
            Expr::y()
        } else {
            Expr::or(Expr::id(name(i - 1)), Expr::not(Expr::id(name(i - 2))))
        };
        Config::new(name(i), ConfigType::Boolean)
            .with_prompt(prompt)
            .with_default(Expr::id(name((i + 1) % k)), Expr::id(name((i + k - 1) % k)))
    });
    let members = (k - 3..k).map(name).collect::<Vec<_>>();
    let choice = Choice::new(ChoiceType::Boolean, false, Expr::y(), members);
    Model::new(configs, [choice]).expect("mesh model")
}

/// A balanced expression of the given depth over `k` identifiers.
pub fn balanced_expr(depth: u32, k: usize) -> Expr {
    fn go(depth: u32, at: &mut usize, k: usize) -> Expr {
        if depth == 0 {
            *at += 1;
            return Expr::id(name(*at % k));
        }
        let l = go(depth - 1, at, k);
        let r = go(depth - 1, at, k);
        match depth % 3 {
            0 => Expr::not(Expr::and(l, r)),
            1 => Expr::or(l, r),
            _ => Expr::and(l, r),
        }
    }
    go(depth, &mut 0, k)
}

/// Every config of `model` set to `t`.
pub fn uniform(model: &Model, t: Tri) -> Configuration {
    model
        .configs()
        .fold(Configuration::new(), |c, cfg| c.with(&cfg.name, t))
}
