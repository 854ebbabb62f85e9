//! Relation-algebra laws and step-by-step checking of equational derivations.
//!
//! `ra1`..`ra10` are Tarski's axioms. `dra1`..`dra7` are laws derived from
//! them; the two conditional ones (monotonicity of `;` in each argument) are
//! stated in the equivalent unconditional form `(x . y);z <= y;z`.

use serde::Serialize;

use super::{parse_term, AlgebraError, FiniteAlgebra, IdentityOutcome, Mode, RATerm, Relation};
use crate::algebra::holds_identity;
use crate::exec::Exec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Law {
    pub name: &'static str,
    pub lhs: RATerm,
    pub relation: Relation,
    pub rhs: RATerm,
}

const LAWS: &[(&str, &str)] = &[
    ("ra1", "x + y = y + x"),
    ("ra2", "x + (y + z) = (x + y) + z"),
    ("ra3", "-(-x + -y) + -(-x + y) = x"),
    ("ra4", "x;(y;z) = (x;y);z"),
    ("ra5", "(x + y);z = x;z + y;z"),
    ("ra6", "x;id = x"),
    ("ra7", "x^^ = x"),
    ("ra8", "(x + y)^ = x^ + y^"),
    ("ra9", "(x;y)^ = y^;x^"),
    ("ra10", "x^;-(x;y) + -y = -y"),
    ("dra1", "(x . y);z <= y;z"),
    ("dra2", "z;(x + y) = z;x + z;y"),
    ("dra3", "z;(x . y) <= z;y"),
    ("dra4", "1^ = 1"),
    ("dra5", "-x^ = (-x)^"),
    ("dra6", "(x . y)^ = x^ . y^"),
    ("dra7", "x;y . z <= x;(y . x^;z)"),
    ("refleq", "x;y . z <= (x . -w^);y + x;(y . w;z)"),
];

const CHAINS: &[(&str, &str)] = &[
    ("dra2", include_str!("../../../../data/chains/dra2.chain")),
    ("dra4", include_str!("../../../../data/chains/dra4.chain")),
    ("dra6", include_str!("../../../../data/chains/dra6.chain")),
    ("dra7a", include_str!("../../../../data/chains/dra7a.chain")),
    ("dra7b", include_str!("../../../../data/chains/dra7b.chain")),
    (
        "refleq",
        include_str!("../../../../data/chains/refleq.chain"),
    ),
];

/// Splits `lhs (=|<=) rhs` at its relation symbol.
fn split_relation(text: &str) -> Option<(&str, Relation, &str)> {
    if let Some(i) = text.find("<=") {
        return Some((&text[..i], Relation::Leq, &text[i + 2..]));
    }
    text.find('=')
        .map(|i| (&text[..i], Relation::Equals, &text[i + 1..]))
}

fn parse_statement(text: &str) -> Result<(RATerm, Relation, RATerm), String> {
    let (l, rel, r) = split_relation(text).ok_or("expected '=' or '<='")?;
    let lhs = parse_term(l.trim()).map_err(|e| format!("left side: {e}"))?;
    let rhs = parse_term(r.trim()).map_err(|e| format!("right side: {e}"))?;
    Ok((lhs, rel, rhs))
}

pub fn laws() -> Vec<Law> {
    LAWS.iter()
        .map(|&(name, text)| {
            let (lhs, relation, rhs) = parse_statement(text).expect("built-in laws parse");
            Law {
                name,
                lhs,
                relation,
                rhs,
            }
        })
        .collect()
}

pub fn get_law(name: &str) -> Result<Law, AlgebraError> {
    laws()
        .into_iter()
        .find(|l| l.name == name)
        .ok_or_else(|| AlgebraError::UnknownName(name.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub lhs: RATerm,
    pub relation: Relation,
    pub rhs: RATerm,
    /// Citation only, never checked: `BA`, `ra1`..`ra10` or a derived law.
    pub tag: String,
}

fn valid_tag(tag: &str) -> bool {
    !tag.is_empty()
        && tag.split(',').map(str::trim).all(|t| {
            t == "BA"
                || ["ra", "dra"].iter().any(|p| {
                    t.strip_prefix(p)
                        .is_some_and(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()))
                })
                || t == "refleq"
        })
}

/// One step per line: `lhs (=|<=) rhs ; tag`. Blank lines and `#` comments
/// are skipped. The tag follows the last `;`.
pub fn parse_chain(text: &str) -> Result<Vec<ChainStep>, AlgebraError> {
    let mut steps = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| AlgebraError::ChainSyntax {
            line: n + 1,
            message,
        };
        let (body, tag) = line
            .rsplit_once(';')
            .ok_or_else(|| err("missing '; tag'".into()))?;
        let tag = tag.trim();
        if !valid_tag(tag) {
            return Err(err(format!("bad tag '{tag}'")));
        }
        let (lhs, relation, rhs) = parse_statement(body).map_err(err)?;
        steps.push(ChainStep {
            lhs,
            relation,
            rhs,
            tag: tag.to_string(),
        });
    }
    if steps.is_empty() {
        return Err(AlgebraError::ChainSyntax {
            line: 0,
            message: "no steps".into(),
        });
    }
    Ok(steps)
}

pub fn chain_names() -> Vec<&'static str> {
    CHAINS.iter().map(|c| c.0).collect()
}

pub fn get_chain(name: &str) -> Result<Vec<ChainStep>, AlgebraError> {
    let (_, text) = CHAINS
        .iter()
        .find(|c| c.0 == name)
        .ok_or_else(|| AlgebraError::UnknownName(name.to_string()))?;
    parse_chain(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepResult {
    /// 1-based step number.
    pub index: usize,
    pub tag: String,
    pub algebra: String,
    pub outcome: IdentityOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub steps: Vec<StepResult>,
    /// First left side against last right side, related by the composed relation.
    pub relation: Relation,
    pub end_to_end: Vec<StepResult>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.steps
            .iter()
            .chain(&self.end_to_end)
            .all(|s| s.outcome.passed())
    }

    /// The first failing step as an error.
    pub fn failure(&self) -> Option<AlgebraError> {
        self.steps
            .iter()
            .chain(&self.end_to_end)
            .find(|s| !s.outcome.passed())
            .map(|s| AlgebraError::StepFailed {
                index: s.index,
                tag: s.tag.clone(),
                counterexample: match &s.outcome {
                    IdentityOutcome::Counterexample(c) => Some(c.clone()),
                    IdentityOutcome::Pass { .. } => None,
                },
            })
    }
}

/// Checks every step in every algebra, then the whole chain end to end.
/// Consecutive steps must share their middle term.
pub fn check_chain(
    algebras: &[FiniteAlgebra],
    chain: &[ChainStep],
    mode: Mode,
    exec: Exec,
) -> Result<ChainReport, AlgebraError> {
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
        return Err(AlgebraError::ChainSyntax {
            line: 0,
            message: "no steps".into(),
        });
    };
    for (k, w) in chain.windows(2).enumerate() {
        if w[0].rhs != w[1].lhs {
            return Err(AlgebraError::ChainSyntax {
                line: k + 2,
                message: format!(
                    "step starts at {} but the previous one ended at {}",
                    w[1].lhs, w[0].rhs
                ),
            });
        }
    }
    let mut steps = Vec::new();
    for (k, s) in chain.iter().enumerate() {
        for alg in algebras {
            let outcome = holds_identity(alg, &s.lhs, s.relation, &s.rhs, mode, exec)?;
            steps.push(StepResult {
                index: k + 1,
                tag: s.tag.clone(),
                algebra: alg.name(),
                outcome,
            });
        }
    }
    let relation = chain
        .iter()
        .skip(1)
        .fold(first.relation, |r, s| r.then(s.relation));
    let mut end_to_end = Vec::new();
    for alg in algebras {
        let outcome = holds_identity(alg, &first.lhs, relation, &last.rhs, mode, exec)?;
        end_to_end.push(StepResult {
            index: chain.len() + 1,
            tag: "chain".into(),
            algebra: alg.name(),
            outcome,
        });
    }
    Ok(ChainReport {
        steps,
        relation,
        end_to_end,
    })
}
