//! Turning command-line arguments into library values. Names go through the
//! built-in registry; an existing file wins over a name, with a warning.

use std::path::{Path, PathBuf};

use tarl::algebra::FiniteAlgebra;
use tarl::builtin::{corpus_script, get_formula, get_structure};
use tarl::exec::Exec;
use tarl::formula::{parse_formula, Formula};
use tarl::kernel::script::parse_script;
use tarl::kernel::Proof;
use tarl::models::{parse_model, ElemSet, ModelStructure, Valuation};

use crate::CliError;

pub fn exec_for(jobs: usize) -> Exec {
    if jobs == 1 {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

/// `TARL_DATA`, if set, replaces the built-in data directory.
fn data_dir() -> Option<PathBuf> {
    std::env::var_os("TARL_DATA").map(PathBuf::from)
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn warn_shadowed(kind: &str, name: &str) {
    eprintln!("warning: file '{name}' shadows the built-in {kind} of the same name");
}

pub fn formula(arg: &str) -> Result<Formula, CliError> {
    if let Ok(named) = get_formula(arg) {
        return Ok(named.formula);
    }
    parse_formula(arg).map_err(CliError::input)
}

pub fn model(arg: &str) -> Result<ModelStructure, CliError> {
    let builtin = get_structure(arg).ok();
    let path = Path::new(arg);
    if path.is_file() {
        if builtin.is_some() {
            warn_shadowed("structure", arg);
        }
        return parse_model(&read(path)?).map_err(CliError::input);
    }
    if let Some(dir) = data_dir() {
        let file = dir
            .join("models")
            .join(format!("{}.model", arg.to_uppercase()));
        if file.is_file() {
            return parse_model(&read(&file)?).map_err(CliError::input);
        }
    }
    builtin.ok_or_else(|| {
        CliError::Input(format!("'{arg}' is neither a model file nor one of K1..K5"))
    })
}

/// A proof script from a file, the `TARL_DATA` corpus, or the built-in corpus.
pub fn proof(arg: &str) -> Result<Proof, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        if corpus_script(arg).is_ok() {
            warn_shadowed("corpus entry", arg);
        }
        read(path)?
    } else {
        corpus_text(arg)?
            .ok_or_else(|| CliError::Input(format!("'{arg}' is neither a file nor a corpus id")))?
    };
    parse_script(&text).map_err(CliError::input)
}

pub fn corpus_text(id: &str) -> Result<Option<String>, CliError> {
    if let Some(dir) = data_dir() {
        let file = dir.join("corpus").join(format!("{id}.prf"));
        if file.is_file() {
            return read(&file).map(Some);
        }
    }
    Ok(corpus_script(id).ok().map(str::to_string))
}

pub fn algebra(arg: &str) -> Result<FiniteAlgebra, CliError> {
    if let Some(n) = arg.strip_prefix("proper:") {
        let base = n
            .parse()
            .map_err(|_| CliError::Input(format!("bad base in '{arg}'")))?;
        return FiniteAlgebra::proper(base).map_err(CliError::input);
    }
    model(arg).map(FiniteAlgebra::complex)
}

pub fn format_valuation(m: &ModelStructure, v: &Valuation) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|(p, &s)| format!("{p}\u{21a6}{}", m.format_set(s)))
        .collect();
    parts.join(", ")
}

pub fn valuation_json(m: &ModelStructure, v: &Valuation) -> serde_json::Value {
    v.iter()
        .map(|(p, &s)| (p.clone(), serde_json::Value::String(m.format_set(s))))
        .collect()
}

pub fn set_json(m: &ModelStructure, s: ElemSet) -> serde_json::Value {
    serde_json::Value::String(m.format_set(s))
}
