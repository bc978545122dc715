//! Shared helpers: running the binary, writing the corpus to disk and
//! replaying the witnesses of a report against the library.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::sync::Arc;

use clap::Parser;
use serde_json::Value;
use tgw_cli::args::{Cli, Command};
use tgw_cli::corpus_files::corpus_files;
use tgw_cli::format::Document;
use tgw_cli::run::{angle_of, load, pick};
use tgw_core::angulation::{certificate_violation, les_violation, long_exact_sequence, rotate};
use tgw_core::exactness::{barr_violation, BarrCorpus};
use tgw_core::monoidal::{curry_violation, tensor};
use tgw_core::spectrum::{sheaf_violation, spec, spec_violation, IdealConvention, Primality};
use tgw_core::{corpus, module_violation, morphism_violation, semiring_violation, TernaryGammaModule, WorkbenchConfig};
use tgw_core::simplicial::simplicial_violation;

pub const BIN: &str = env!("CARGO_BIN_EXE_tgw");

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub json: Value,
}

impl Run {
    pub fn status(&self, check: &str) -> Option<&str> {
        self.checks().find(|c| c["name"] == check).and_then(|c| c["status"].as_str())
    }

    pub fn checks(&self) -> impl Iterator<Item = &Value> {
        self.json["checks"].as_array().into_iter().flatten()
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks()
            .filter(|c| c["status"] == "fail")
            .filter_map(|c| c["name"].as_str())
            .collect()
    }
}

pub fn tgw_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut p = Process::new(BIN);
    p.args(args);
    for (k, v) in env {
        p.env(k, v);
    }
    let out = p.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().expect("exit code"),
        stdout,
        json,
    }
}

pub fn tgw(args: &[&str]) -> Run {
    tgw_with_env(args, &[])
}

/// The built-in corpus written to a fresh directory.
pub struct CorpusDir {
    dir: tempfile::TempDir,
}

impl CorpusDir {
    pub fn new() -> Self {
        let dir = tempfile::tempdir().expect("temp dir");
        for (file, text) in corpus_files(&WorkbenchConfig::default()).expect("corpus") {
            std::fs::write(dir.path().join(file), text).expect("write corpus file");
        }
        CorpusDir { dir }
    }

    pub fn path(&self, file: &str) -> String {
        self.dir.path().join(file).display().to_string()
    }

    pub fn root(&self) -> &Path {
        self.dir.path()
    }

    pub fn files(&self, ext: &str) -> Vec<PathBuf> {
        let mut v: Vec<PathBuf> = std::fs::read_dir(self.dir.path())
            .expect("read dir")
            .map(|e| e.expect("entry").path())
            .filter(|p| p.extension().is_some_and(|e| e == ext))
            .collect();
        v.sort();
        v
    }
}

fn values(check: &Value) -> Option<Vec<usize>> {
    check["witness"]["values"]
        .as_array()
        .map(|a| a.iter().map(|v| v.as_u64().expect("witness value") as usize).collect())
}

/// Splits `NAME.law` against the names a document defines.
fn split_named<'a, T>(rest: &'a str, names: &std::collections::BTreeMap<String, T>) -> Option<(&'a str, &'a str)> {
    names
        .keys()
        .filter(|n| rest.len() > n.len() && rest.starts_with(n.as_str()) && rest.as_bytes()[n.len()] == b'.')
        .max_by_key(|n| n.len())
        .map(|n| (&rest[..n.len()], &rest[n.len() + 1..]))
}

fn replay_validation(doc: &Document, cfg: &WorkbenchConfig, name: &str, v: &[usize]) -> Option<bool> {
    let (kind, rest) = name.split_once('.')?;
    match kind {
        "semiring" => {
            let (n, law) = split_named(rest, &doc.semirings)?;
            Some(semiring_violation(&doc.semirings[n], law, v))
        }
        "module" => {
            let (n, law) = split_named(rest, &doc.modules)?;
            Some(module_violation(&doc.modules[n], law, v))
        }
        "morphism" => {
            let (n, law) = split_named(rest, &doc.morphisms)?;
            Some(morphism_violation(&doc.morphisms[n], law, v))
        }
        "simplicial" => {
            let (n, law) = split_named(rest, &doc.simplicial)?;
            Some(simplicial_violation(&doc.simplicial[n], law, v))
        }
        "sheaf" => {
            let (n, law) = split_named(rest, &doc.sheaves)?;
            Some(sheaf_violation(&doc.sheaves[n], law, v, cfg.element_budget))
        }
        _ => None,
    }
}

/// For every failing check with a witness: `Some(true)` if the library
/// re-decides the named instance as failing, `Some(false)` if it does not,
/// `None` if this command's witnesses have no replay route.
pub fn replay(args: &[&str], report: &Value) -> Vec<(String, Option<bool>)> {
    let cli = Cli::try_parse_from(std::iter::once("tgw").chain(args.iter().copied())).expect("arguments parse");
    let cmd = &cli.command;
    let common = cmd.common();
    let cfg = common.config();
    let doc = load(&common.paths()).expect("inputs load");
    let failing: Vec<(String, Vec<usize>)> = report["checks"]
        .as_array()
        .expect("checks")
        .iter()
        .filter(|c| c["status"] == "fail")
        .filter_map(|c| Some((c["name"].as_str()?.to_string(), values(c)?)))
        .collect();
    failing
        .into_iter()
        .map(|(name, v)| {
            let verdict = replay_one(cmd, &doc, &cfg, &name, &v);
            (name, verdict)
        })
        .collect()
}

fn replay_one(cmd: &Command, doc: &Document, cfg: &WorkbenchConfig, name: &str, v: &[usize]) -> Option<bool> {
    if let Some(rest) = name.strip_prefix("input.") {
        return replay_validation(doc, cfg, rest, v);
    }
    match cmd {
        Command::Check { .. } => replay_validation(doc, cfg, name, v),
        Command::SheafCheck { sheaf, .. } => {
            let f = pick(&doc.sheaves, sheaf.as_deref(), "sheaf").ok()?;
            Some(sheaf_violation(f, name, v, cfg.element_budget))
        }
        Command::Angle { map, nmax, .. } => {
            let a = angle_of(doc, map.as_deref(), cfg).ok()?;
            match name.strip_prefix("les.") {
                Some(law) => {
                    let n = nmax.unwrap_or(cfg.truncation - 1);
                    let seq = long_exact_sequence(&a, n, cfg).ok()?;
                    Some(les_violation(&seq, law, v))
                }
                None => certificate_violation(&a, name, v, cfg).ok(),
            }
        }
        Command::Rotate { map, .. } => {
            let mut a = angle_of(doc, map.as_deref(), cfg).ok()?;
            let (prefix, law) = name.split_once('.')?;
            let k: usize = match prefix {
                "base" => 0,
                p => p.strip_prefix("rotation")?.parse().ok()?,
            };
            for _ in 0..k {
                a = rotate(&a, cfg).ok()?;
            }
            certificate_violation(&a, law, v, cfg).ok()
        }
        Command::Spec { semiring, primality, improper_primes, proper_ideals, .. } => {
            let s = pick(&doc.semirings, semiring.as_deref(), "semiring").ok()?;
            let conv = IdealConvention {
                primality: match primality {
                    tgw_cli::args::PrimalityArg::Any => Primality::AnySlot,
                    tgw_cli::args::PrimalityArg::Outer => Primality::OuterSlots,
                },
                improper_ideals: !proper_ideals,
                improper_primes: *improper_primes,
                ..IdealConvention::default()
            };
            let sp = spec(s, &conv).ok()?;
            Some(spec_violation(&sp, name, v))
        }
        Command::CurryCheck { left, right, target, .. } => {
            let get = |n: &Option<String>| pick(&doc.modules, n.as_deref(), "module").ok().cloned();
            let (a, b) = match (left, right) {
                (None, None) => {
                    let m = get(&None)?;
                    (m.clone(), m)
                }
                _ => (get(left)?, get(right)?),
            };
            let p = match target {
                Some(_) => get(target)?,
                None => b.clone(),
            };
            let t = tensor(&a, &b, cfg.element_budget, cfg.search_budget as usize).ok()?;
            Some(curry_violation(&t, &p, name, v, cfg.search_budget))
        }
        Command::Barr { modules, .. } => {
            let chosen: Vec<Arc<TernaryGammaModule>> = if !modules.is_empty() {
                modules.iter().map(|n| doc.modules.get(n).cloned()).collect::<Option<_>>()?
            } else if !doc.modules.is_empty() {
                doc.modules.values().cloned().collect()
            } else {
                corpus::small_b1_modules().into_iter().map(Arc::new).collect()
            };
            let bc = BarrCorpus::with_all_morphisms(chosen, cfg.search_budget).ok()?;
            Some(barr_violation(&bc, name, v, cfg.element_budget, cfg.search_budget))
        }
        _ => None,
    }
}
