use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kconfig-sem"))
        .args(args)
        .env_remove("KCONFIG_SEM_CAP")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn wf_check_reports_rule_ids() {
    let o = run(&["wf-check", "--model", path(&fixture("wf_select_on_int.model"))]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).starts_with("W1 config COUNT:"));

    let o = run(&[
        "--porcelain",
        "wf-check",
        "--model",
        path(&fixture("wf_range_on_string.model")),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("W2\tconfig\tLABEL\t"));

    let o = run(&["wf-check", "--model", path(&fixture("wf_select_on_int.fixed.model"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "");
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.model", "config A flag\n");
    let o = run(&["wf-check", "--model", &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("1:10"), "{}", stderr(&o));

    let o = run(&["check-abstraction", "--model", &bad]);
    assert_eq!(code(&o), 2);
    let o = run(&["prop-export", "--model", "/nonexistent.model", "--out", "x.cnf"]);
    assert_eq!(code(&o), 2);
    let o = run(&["enumerate"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn validate_explains_failures() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.model", "config A boolean\n  prompt y\n");
    let good = write(&dir, "good.conf", "A=y\n");
    let bad = write(&dir, "bad.conf", "A=m\n");
    let missing = write(&dir, "missing.conf", "");

    let o = run(&["validate", "--model", &model, "--config", &good]);
    assert_eq!((code(&o), stdout(&o)), (0, "valid\n".to_string()));

    let o = run(&["validate", "--model", &model, "--config", &bad, "--explain"]);
    assert_eq!(code(&o), 1);
    assert_eq!(
        stdout(&o),
        "invalid\nFAIL type config A: value m is outside the boolean domain\n"
    );

    let o = run(&[
        "--porcelain",
        "validate",
        "--model",
        &model,
        "--config",
        &bad,
        "--explain",
    ]);
    assert_eq!(
        stdout(&o),
        "invalid\ntype\tconfig\tA\tvalue m is outside the boolean domain\n"
    );

    let o = run(&["validate", "--model", &model, "--config", &missing]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("A"), "{}", stderr(&o));
}

#[test]
fn validate_rejects_ill_formed_models() {
    let o = run(&[
        "validate",
        "--model",
        path(&fixture("wf_select_on_int.model")),
        "--config",
        path(&fixture("mixed_types.conf")),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("W1 config COUNT"));
    assert_eq!(stdout(&o), "");
}

#[test]
fn validate_fixture_configs() {
    let model = fixture("mixed_types.model");
    let o = run(&[
        "validate",
        "--model",
        path(&model),
        "--config",
        path(&fixture("mixed_types.conf")),
    ]);
    assert_eq!(code(&o), 0);
    let o = run(&[
        "validate",
        "--model",
        path(&model),
        "--config",
        path(&fixture("mixed_types.invalid.conf")),
        "--explain",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL bounds config USB_STORAGE"));
}

#[test]
fn enumerate_lists_and_counts() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.model", "config A boolean\n  prompt y\n");
    let o = run(&["enumerate", "--model", &model]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "# 1\nA=n\n\n# 2\nA=y\n");

    let o = run(&[
        "--porcelain",
        "enumerate",
        "--model",
        path(&fixture("choice_boolean_mandatory.model")),
    ]);
    assert_eq!(
        stdout(&o),
        "FAST=n\tSAFE=n\tSMALL=y\nFAST=n\tSAFE=y\tSMALL=n\nFAST=y\tSAFE=n\tSMALL=n\n"
    );

    let empty = write(&dir, "empty.model", "# nothing\n");
    let o = run(&["enumerate", "--model", &empty]);
    assert_eq!(stdout(&o), "# 1\n");
    let o = run(&["enumerate", "--model", &empty, "--count-only"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn enumeration_cap_from_flag_and_environment() {
    let model = fixture("mixed_types.model");
    let o = run(&["enumerate", "--model", path(&model), "--cap", "100"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cap"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_kconfig-sem"))
        .args(["enumerate", "--count-only", "--model", path(&model)])
        .env("KCONFIG_SEM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);

    // the flag wins over the environment
    let o = Command::new(env!("CARGO_BIN_EXE_kconfig-sem"))
        .args(["enumerate", "--count-only", "--cap", "1000000", "--model", path(&model)])
        .env("KCONFIG_SEM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1308\n");
}

#[test]
fn prop_export_writes_dimacs_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("pair.cnf");
    let o = run(&[
        "prop-export",
        "--model",
        path(&fixture("boolean_select.model")),
        "--out",
        path(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let cnf = fs::read_to_string(&out).unwrap();
    assert_eq!(
        cnf,
        "c CONSOLE 1\nc CONSOLE_EXTRA 2\nc SERIAL 3\np cnf 3 2\n1 -3 0\n1 -2 0\n"
    );
    assert_eq!(fs::read_to_string(dir.path().join("pair.cnf.diag")).unwrap(), "");

    let empty = write(&dir, "empty.model", "");
    let out = dir.path().join("empty.cnf");
    run(&["prop-export", "--model", &empty, "--out", path(&out)]);
    assert_eq!(fs::read_to_string(&out).unwrap(), "p cnf 0 0\n");
}

#[test]
fn prop_export_is_deterministic_and_records_diagnostics() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.model", "config A tristate\n  prompt (\"x\" = \"y\")\n");
    let (a, b) = (dir.path().join("a.cnf"), dir.path().join("b.cnf"));
    let o = run(&["prop-export", "--model", &model, "--out", path(&a)]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("1 unsupported rewrite"));
    run(&["prop-export", "--model", &model, "--out", path(&b)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let diag = fs::read_to_string(dir.path().join("a.cnf.diag")).unwrap();
    assert!(diag.starts_with("config A prompt: `\"x\" = \"y\"`"), "{diag}");
}

#[test]
fn check_abstraction_outcomes() {
    let o = run(&["check-abstraction", "--model", path(&fixture("boolean_select.model"))]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(
        stdout(&o).ends_with("SPURIOUS 0\nSUMMARY valid=5 violations=0\n"),
        "{}",
        stdout(&o)
    );

    let o = run(&["check-abstraction", "--model", path(&fixture("tristate_choice.model"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("VIOLATION NET_A=m NET_B=m\n"));

    let o = run(&[
        "--porcelain",
        "check-abstraction",
        "--choose-exactly-one",
        "--model",
        path(&fixture("tristate_choice.model")),
    ]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("VIOLATION\tNET_A=m\tNET_B=m\n"), "{text}");
    assert!(text.contains("VIOLATION\tNET_A=n\tNET_B=n\n"), "{text}");
    assert!(text.ends_with("SUMMARY\t6\t2\n"), "{text}");
}
