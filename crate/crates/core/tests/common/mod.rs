#![allow(dead_code)]

pub mod dpll;
pub mod gen;

use std::fs;
use std::path::{Path, PathBuf};

use kconfig_sem::{parse_model, Model};

pub fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_model(name: &str) -> Model {
    let path = fixture_path(name);
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_model(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Every `*.model` fixture, sorted by file name.
pub fn fixture_models() -> Vec<(String, Model)> {
    let mut names: Vec<String> = fs::read_dir(fixture_path(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".model"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load_model(&n))).collect()
}
