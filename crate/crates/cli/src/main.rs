//! `kconfig-sem`: check, validate, enumerate and abstract Kconfig models.
//!
//! Exit status: 0 success, 1 semantic negative (invalid configuration,
//! well-formedness or soundness violations), 2 usage, input or limit errors.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use kconfig_sem::io::{config_one_line, parse_config, parse_model, serialize_config};
use kconfig_sem::prop::{build_formula, check_soundness, numbering_for, ChooseEncoding, CnfDoc, DEFAULT_CLAUSE_CAP};
use kconfig_sem::semantics::{Subject, Verdict};
use kconfig_sem::wf::{self, check_well_formed, Violation};
use kconfig_sem::{enumerate, validate, Model, ValueUniverse, DEFAULT_CAP};

#[derive(Parser)]
#[command(name = "kconfig-sem", version, about = "Formal semantics toolkit for Kconfig models")]
struct Cli {
    /// Tab-separated, stable output fields.
    #[arg(long, global = true)]
    porcelain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report well-formedness violations of a model.
    WfCheck {
        #[arg(long)]
        model: PathBuf,
    },
    /// Decide whether a configuration is valid for a model.
    Validate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        config: PathBuf,
        /// Print every failing denotation.
        #[arg(long)]
        explain: bool,
    },
    /// List every valid configuration.
    Enumerate {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        cap: CapArg,
        /// Print only the number of valid configurations.
        #[arg(long)]
        count_only: bool,
    },
    /// Write the propositional abstraction as DIMACS CNF.
    PropExport {
        #[arg(long)]
        model: PathBuf,
        /// DIMACS output; unsupported rewrites go to `<out>.diag`.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        encoding: EncodingArg,
    },
    /// Compare the abstraction against the exact semantics.
    CheckAbstraction {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        cap: CapArg,
        #[command(flatten)]
        encoding: EncodingArg,
    },
}

#[derive(Args)]
struct CapArg {
    /// Largest number of assignments to scan.
    #[arg(long = "cap", env = "KCONFIG_SEM_CAP", default_value_t = DEFAULT_CAP)]
    value: u64,
}

#[derive(Args)]
struct EncodingArg {
    /// Encode choices as exactly-one instead of at-most-one.
    #[arg(long)]
    choose_exactly_one: bool,
}

impl EncodingArg {
    fn encoding(&self) -> ChooseEncoding {
        if self.choose_exactly_one {
            ChooseEncoding::ExactlyOne
        } else {
            ChooseEncoding::AtMostOne
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Negative,
}

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|s| {
        out.flush()?;
        Ok(s)
    });
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<Status> {
    let porcelain = cli.porcelain;
    match &cli.command {
        Command::WfCheck { model } => {
            let model = load_model(model)?;
            let violations = check_well_formed(&model);
            for v in &violations {
                writeln!(out, "{}", violation_line(v, porcelain))?;
            }
            Ok(if violations.is_empty() {
                Status::Ok
            } else {
                Status::Negative
            })
        }
        Command::Validate { model, config, explain } => {
            let Some(model) = load_well_formed(model)? else {
                return Ok(Status::Negative);
            };
            let text = read(config)?;
            let c = parse_config(&text, &model).map_err(|e| anyhow!("{}: {e}", config.display()))?;
            let report = validate(&model, &c)?;
            writeln!(out, "{}", if report.is_valid() { "valid" } else { "invalid" })?;
            if *explain {
                for v in report.failures() {
                    writeln!(out, "{}", verdict_line(v, porcelain))?;
                }
            }
            Ok(if report.is_valid() {
                Status::Ok
            } else {
                Status::Negative
            })
        }
        Command::Enumerate { model, cap, count_only } => {
            let Some(model) = load_well_formed(model)? else {
                return Ok(Status::Negative);
            };
            let all = enumerate(&model, &ValueUniverse::for_model(&model), cap.value)?;
            if *count_only {
                writeln!(out, "{}", all.len())?;
            } else {
                for (i, c) in all.iter().enumerate() {
                    if porcelain {
                        writeln!(out, "{}", config_one_line(c).replace(' ', "\t"))?;
                    } else {
                        if i > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "# {}\n{}", i + 1, serialize_config(c))?;
                    }
                }
            }
            Ok(Status::Ok)
        }
        Command::PropExport {
            model,
            out: path,
            encoding,
        } => {
            let Some(model) = load_well_formed(model)? else {
                return Ok(Status::Negative);
            };
            let abstraction = build_formula(&model, encoding.encoding(), DEFAULT_CLAUSE_CAP)?;
            let doc = CnfDoc::new(&abstraction.formula, &numbering_for(&model), DEFAULT_CLAUSE_CAP)?;
            fs::write(path, doc.to_dimacs()).with_context(|| format!("writing {}", path.display()))?;
            let diag_path = sidecar(path);
            let diag: String = abstraction.diagnostics.iter().map(|d| format!("{d}\n")).collect();
            fs::write(&diag_path, diag).with_context(|| format!("writing {}", diag_path.display()))?;
            if !abstraction.diagnostics.is_empty() {
                eprintln!(
                    "warning: {} unsupported rewrite(s), see {}",
                    abstraction.diagnostics.len(),
                    diag_path.display()
                );
            }
            Ok(Status::Ok)
        }
        Command::CheckAbstraction { model, cap, encoding } => {
            let Some(model) = load_well_formed(model)? else {
                return Ok(Status::Negative);
            };
            let report = check_soundness(
                &model,
                &ValueUniverse::for_model(&model),
                cap.value,
                encoding.encoding(),
            )?;
            for d in &report.diagnostics {
                eprintln!("note: {d}");
            }
            let sep = if porcelain { "\t" } else { " " };
            for c in &report.violations {
                writeln!(out, "VIOLATION{sep}{}", config_one_line(c).replace(' ', sep))?;
            }
            if let Some(n) = report.spurious {
                writeln!(out, "SPURIOUS{sep}{n}")?;
            }
            if porcelain {
                writeln!(out, "SUMMARY\t{}\t{}", report.valid, report.violations.len())?;
            } else {
                writeln!(
                    out,
                    "SUMMARY valid={} violations={}",
                    report.valid,
                    report.violations.len()
                )?;
            }
            Ok(if report.is_sound() {
                Status::Ok
            } else {
                Status::Negative
            })
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_model(path: &Path) -> Result<Model> {
    let text = read(path)?;
    parse_model(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// `None` after reporting violations on stderr.
fn load_well_formed(path: &Path) -> Result<Option<Model>> {
    let model = load_model(path)?;
    let violations = check_well_formed(&model);
    if violations.is_empty() {
        return Ok(Some(model));
    }
    eprintln!("{}: model is not well-formed", path.display());
    for v in &violations {
        eprintln!("{v}");
    }
    Ok(None)
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".diag");
    PathBuf::from(s)
}

fn violation_line(v: &Violation, porcelain: bool) -> String {
    if !porcelain {
        return v.to_string();
    }
    let (kind, id) = match &v.subject {
        wf::Subject::Config(n) => ("config", n.clone()),
        wf::Subject::Choice(i) => ("choice", i.to_string()),
    };
    format!("{}\t{kind}\t{id}\t{}", v.rule, v.detail)
}

fn verdict_line(v: &Verdict<'_>, porcelain: bool) -> String {
    if !porcelain {
        return v.to_string();
    }
    let (kind, id) = match v.subject {
        Subject::Config(n) => ("config", n.to_string()),
        Subject::Choice(i) => ("choice", i.to_string()),
        Subject::Model => ("model", "-".to_string()),
    };
    format!("{}\t{kind}\t{id}\t{}", v.denotation, v.diagnostic)
}
