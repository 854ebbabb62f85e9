//! Plain-text proof scripts.
//!
//! ```text
//! # comment
//! lemma A1 : a -> a bound 2
//! 1. (a)[1,0] => (a)[1,0] ; axiom
//! 2. => (a -> a)[0,0] ; impR 1 k=1
//! ```
//!
//! Omitted references default to the previous line (one-premise rules) or
//! the previous two lines (two-premise rules). Fusion is desugared on load.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Assertion, Justification, Proof, ProofLine, Sequent, Side, DEFAULT_BOUND, MAX_BOUND};
use crate::formula::parse_formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("script line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ScriptError> {
    Err(ScriptError {
        line,
        message: message.into(),
    })
}

pub fn parse_script(text: &str) -> Result<Proof, ScriptError> {
    let mut proof = Proof::new(DEFAULT_BOUND);
    let mut seen_header = false;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("lemma ") {
            if seen_header || !proof.lines.is_empty() {
                return fail(line_no, "unexpected lemma header");
            }
            seen_header = true;
            parse_header(rest, line_no, &mut proof)?;
            continue;
        }
        let expected = proof.lines.len() + 1;
        let Some((num, body)) = line.split_once('.') else {
            return fail(line_no, "expected '<k>. <sequent> ; <rule>'");
        };
        match num.trim().parse::<usize>() {
            Ok(k) if k == expected => {}
            _ => return fail(line_no, format!("expected line number {expected}")),
        }
        let Some((seq_text, rule_text)) = body.split_once(';') else {
            return fail(line_no, "missing ';' before rule");
        };
        let sequent = parse_sequent(seq_text).map_err(|m| ScriptError {
            line: line_no,
            message: m,
        })?;
        let justification = parse_rule(rule_text.trim(), expected).map_err(|m| ScriptError {
            line: line_no,
            message: m,
        })?;
        proof.lines.push(ProofLine {
            sequent,
            justification,
        });
    }
    Ok(proof)
}

fn parse_header(rest: &str, line_no: usize, proof: &mut Proof) -> Result<(), ScriptError> {
    let mut rest = rest.trim();
    let words: Vec<&str> = rest.split_whitespace().collect();
    if words.len() >= 2 && words[words.len() - 2] == "bound" {
        let Ok(b) = words[words.len() - 1].parse::<u8>() else {
            return fail(line_no, "bound must be a number");
        };
        if b == 0 || b > MAX_BOUND {
            return fail(line_no, format!("bound must lie in 1..={MAX_BOUND}"));
        }
        proof.bound = b;
        let cut = rest.rfind("bound").unwrap_or(rest.len());
        rest = rest[..cut].trim_end();
    }
    let (name, goal) = match rest.split_once(':') {
        Some((name, goal)) => (name.trim(), Some(goal.trim())),
        None => (rest, None),
    };
    if name.is_empty() || name.contains(char::is_whitespace) {
        return fail(line_no, "lemma name must be a single word");
    }
    proof.name = Some(name.to_string());
    if let Some(g) = goal {
        let f = parse_formula(g).map_err(|e| ScriptError {
            line: line_no,
            message: e.to_string(),
        })?;
        proof.goal = Some(f.desugar());
    }
    Ok(())
}

pub fn parse_sequent(text: &str) -> Result<Sequent, String> {
    let Some((l, r)) = text.split_once("=>") else {
        return Err("sequent needs '=>'".into());
    };
    Ok(Sequent {
        left: parse_side(l)?,
        right: parse_side(r)?,
    })
}

fn parse_side(text: &str) -> Result<Side, String> {
    let mut out = Side::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    for (k, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b',' if depth == 0 => {
                out.insert(parse_assertion(&text[start..k])?);
                start = k + 1;
            }
            _ => {}
        }
    }
    if !text[start..].trim().is_empty() {
        out.insert(parse_assertion(&text[start..])?);
    } else if start > 0 {
        return Err("trailing ','".into());
    }
    Ok(out)
}

pub fn parse_assertion(text: &str) -> Result<Assertion, String> {
    let text = text.trim();
    let open = text
        .rfind('[')
        .filter(|_| text.ends_with(']'))
        .ok_or_else(|| format!("'{text}' lacks [i,j]"))?;
    let formula = parse_formula(&text[..open]).map_err(|e| format!("'{}': {e}", &text[..open]))?;
    let idx: Vec<&str> = text[open + 1..text.len() - 1].split(',').collect();
    let parse_idx = |s: &str| {
        s.trim()
            .parse::<u8>()
            .map_err(|_| format!("bad index '{s}'"))
    };
    match idx.as_slice() {
        [i, j] => Ok(Assertion::new(
            formula.desugar(),
            parse_idx(i)?,
            parse_idx(j)?,
        )),
        _ => Err(format!("'{text}' needs two indices")),
    }
}

fn parse_rule(text: &str, line: usize) -> Result<Justification, String> {
    let (head, on) = match text.split_once(" on ") {
        Some((h, a)) => (h, Some(parse_assertion(a)?)),
        None => (text, None),
    };
    let mut words = head
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty());
    let name = words.next().ok_or("missing rule name")?;
    let mut refs = Vec::new();
    let mut eigen = None;
    for w in words {
        if let Some(k) = w.strip_prefix("k=") {
            eigen = Some(
                k.parse::<u8>()
                    .map_err(|_| format!("bad eigen index '{k}'"))?,
            );
        } else {
            refs.push(
                w.parse::<usize>()
                    .map_err(|_| format!("bad reference '{w}'"))?,
            );
        }
    }
    let one = || match refs.as_slice() {
        [] if line > 1 => Ok(line - 1),
        [r] => Ok(*r),
        _ => Err(format!("{name} takes one reference")),
    };
    let two = || match refs.as_slice() {
        [] if line > 2 => Ok([line - 2, line - 1]),
        [a, b] => Ok([*a, *b]),
        _ => Err(format!("{name} takes two references")),
    };
    let j = match name {
        "axiom" if refs.is_empty() => Justification::Axiom,
        "cut" => Justification::Cut {
            premises: two()?,
            on,
        },
        "weaken" => Justification::Weaken(one()?),
        "orL" => Justification::OrL(two()?),
        "orR" => Justification::OrR(one()?),
        "andL" => Justification::AndL(one()?),
        "andR" => Justification::AndR(two()?),
        "negL" => Justification::NegL(one()?),
        "negR" => Justification::NegR(one()?),
        "impL" => Justification::ImpL(two()?),
        "impR" => Justification::ImpR {
            premise: one()?,
            eigen: eigen.ok_or("impR needs k=<index>")?,
        },
        _ => return Err(format!("unknown rule '{name}'")),
    };
    if eigen.is_some() && !matches!(j, Justification::ImpR { .. }) {
        return Err("only impR takes k=".into());
    }
    Ok(j)
}

pub fn print_script(proof: &Proof) -> String {
    let mut out = String::new();
    let name = proof.name.as_deref().unwrap_or("unnamed");
    let _ = write!(out, "lemma {name}");
    if let Some(g) = &proof.goal {
        let _ = write!(out, " : {g}");
    }
    let _ = writeln!(out, " bound {}", proof.bound);
    for (n, l) in proof.lines.iter().enumerate() {
        let _ = write!(
            out,
            "{}. {} ; {}",
            n + 1,
            l.sequent,
            l.justification.rule_name()
        );
        let refs = l.justification.refs();
        if !refs.is_empty() {
            let r: Vec<String> = refs.iter().map(|r| r.to_string()).collect();
            let _ = write!(out, " {}", r.join(","));
        }
        match &l.justification {
            Justification::ImpR { eigen, .. } => {
                let _ = write!(out, " k={eigen}");
            }
            Justification::Cut { on: Some(a), .. } => {
                let _ = write!(out, " on {a}");
            }
            _ => {}
        }
        out.push('\n');
    }
    out
}
