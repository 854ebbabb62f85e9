//! Derived rules of inference: each combinator takes checked proofs of its
//! premises and assembles one proof of the conclusion by concatenating them
//! (index-permuted where needed) and appending a few fixed sequents.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{
    check_proof, permute_indices, substitute_proof, transposition, Assertion, Justification, Proof,
    ProofLine, Sequent, DEFAULT_BOUND,
};
use crate::builtin::corpus_entry;
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivedError {
    #[error("input {index} does not check: {reason}")]
    InvalidInput { index: usize, reason: String },
    #[error("premise mismatch: {0}")]
    PremiseMismatch(String),
    #[error("{rule} takes {inputs} proof(s) and {params} formula parameter(s)")]
    Arity {
        rule: &'static str,
        inputs: usize,
        params: usize,
    },
    #[error("unknown derived rule '{0}'")]
    UnknownRule(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivedRule {
    Adjunction,
    ModusPonens,
    DisjunctiveSyllogism,
    Transitivity,
    Contraposition,
    Contraposition2,
    Cut,
    ERule,
    Suffixing,
    Cycling,
    PrefixingR,
    Affixing,
    MonotonicFusion,
}

impl DerivedRule {
    pub const ALL: [DerivedRule; 13] = [
        DerivedRule::Adjunction,
        DerivedRule::ModusPonens,
        DerivedRule::DisjunctiveSyllogism,
        DerivedRule::Transitivity,
        DerivedRule::Contraposition,
        DerivedRule::Contraposition2,
        DerivedRule::Cut,
        DerivedRule::ERule,
        DerivedRule::Suffixing,
        DerivedRule::Cycling,
        DerivedRule::PrefixingR,
        DerivedRule::Affixing,
        DerivedRule::MonotonicFusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DerivedRule::Adjunction => "adjunction",
            DerivedRule::ModusPonens => "modusponens",
            DerivedRule::DisjunctiveSyllogism => "disjunctivesyllogism",
            DerivedRule::Transitivity => "transitivity",
            DerivedRule::Contraposition => "contraposition",
            DerivedRule::Contraposition2 => "contraposition2",
            DerivedRule::Cut => "cut",
            DerivedRule::ERule => "erule",
            DerivedRule::Suffixing => "suffixing",
            DerivedRule::Cycling => "cycling",
            DerivedRule::PrefixingR => "prefixingR",
            DerivedRule::Affixing => "affixing",
            DerivedRule::MonotonicFusion => "monotonicfusion",
        }
    }

    pub fn from_name(name: &str) -> Result<DerivedRule, DerivedError> {
        DerivedRule::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| DerivedError::UnknownRule(name.to_string()))
    }

    /// Number of input proofs and of formula parameters.
    pub fn arity(self) -> (usize, usize) {
        match self {
            DerivedRule::Adjunction
            | DerivedRule::ModusPonens
            | DerivedRule::DisjunctiveSyllogism
            | DerivedRule::Transitivity
            | DerivedRule::Cut
            | DerivedRule::Affixing
            | DerivedRule::MonotonicFusion => (2, 0),
            DerivedRule::Contraposition | DerivedRule::Contraposition2 | DerivedRule::Cycling => {
                (1, 0)
            }
            DerivedRule::ERule | DerivedRule::Suffixing | DerivedRule::PrefixingR => (1, 1),
        }
    }
}

pub fn apply_derived_rule(
    rule: DerivedRule,
    inputs: &[Proof],
    params: &[Formula],
) -> Result<Proof, DerivedError> {
    let (n_in, n_par) = rule.arity();
    if inputs.len() != n_in || params.len() != n_par {
        return Err(DerivedError::Arity {
            rule: rule.name(),
            inputs: n_in,
            params: n_par,
        });
    }
    let mut proved = Vec::new();
    for (index, p) in inputs.iter().enumerate() {
        let report = check_proof(p);
        if !report.valid {
            let reason = report
                .first_error
                .map(|e| e.to_string())
                .unwrap_or_default();
            return Err(DerivedError::InvalidInput { index, reason });
        }
        let f = p.conclusion().ok_or_else(|| DerivedError::InvalidInput {
            index,
            reason: "proof does not end in a theorem".into(),
        })?;
        proved.push(Premise {
            proof: p,
            formula: f,
        });
    }
    let mut out = match rule {
        DerivedRule::Adjunction => adjunction(&proved[0], &proved[1]),
        DerivedRule::ModusPonens => modus_ponens(&proved[0], &proved[1]),
        DerivedRule::DisjunctiveSyllogism => disjunctive_syllogism(&proved[0], &proved[1]),
        DerivedRule::Transitivity => transitivity(&proved[0], &proved[1]),
        DerivedRule::Contraposition => contraposition(&proved[0]),
        DerivedRule::Contraposition2 => contraposition2(&proved[0]),
        DerivedRule::Cut => cut(&proved[0], &proved[1]),
        DerivedRule::ERule => erule(&proved[0], &params[0]),
        DerivedRule::Suffixing => suffixing(&proved[0], &params[0]),
        DerivedRule::Cycling => cycling(&proved[0]),
        DerivedRule::PrefixingR => prefixing(&proved[0], &params[0]),
        DerivedRule::Affixing => affixing(&proved[0], &proved[1]),
        DerivedRule::MonotonicFusion => monotonic_fusion(&proved[0], &proved[1]),
    }?;
    out.name = Some(rule.name().to_string());
    Ok(out)
}

struct Premise<'a> {
    proof: &'a Proof,
    formula: Formula,
}

fn implication(p: &Premise, what: &str) -> Result<(Formula, Formula), DerivedError> {
    match &p.formula {
        Formula::Implies(a, b) => Ok(((**a).clone(), (**b).clone())),
        f => Err(DerivedError::PremiseMismatch(format!(
            "{what} must be an implication, got {f}"
        ))),
    }
}

fn expect_eq(got: &Formula, want: &Formula, what: &str) -> Result<(), DerivedError> {
    if got == want {
        Ok(())
    } else {
        Err(DerivedError::PremiseMismatch(format!(
            "{what}: expected {want}, got {got}"
        )))
    }
}

fn at(f: &Formula, i: u8, j: u8) -> Assertion {
    Assertion::new(f.clone(), i, j)
}

/// Accumulates lines; every reference is an absolute line number.
struct Builder {
    proof: Proof,
}

impl Builder {
    fn new() -> Self {
        Builder {
            proof: Proof::new(DEFAULT_BOUND),
        }
    }

    fn push(&mut self, left: Vec<Assertion>, right: Vec<Assertion>, j: Justification) -> usize {
        self.proof.lines.push(ProofLine {
            sequent: Sequent::new(left, right),
            justification: j,
        });
        self.proof.lines.len()
    }

    fn axiom(&mut self, f: &Formula, i: u8, j: u8) -> usize {
        self.push(vec![at(f, i, j)], vec![at(f, i, j)], Justification::Axiom)
    }

    /// Appends `p` with its indices renamed by the transposition `(0 k)` (none
    /// for `k == 0`) and returns the line holding `=> f[k,k]`.
    fn include(&mut self, p: &Premise, k: u8) -> usize {
        let mut src = p.proof.clone();
        src.bound = src.bound.max(DEFAULT_BOUND);
        self.proof.bound = self.proof.bound.max(src.bound);
        if k != 0 {
            src = permute_indices(&src, &transposition(0, k, src.bound))
                .expect("transposition is a bijection");
        }
        let offset = self.proof.lines.len();
        for l in &src.lines {
            self.proof.lines.push(ProofLine {
                sequent: l.sequent.clone(),
                justification: l.justification.map_refs(|r| r + offset),
            });
        }
        let target = Sequent::new([], [at(&p.formula, k, k)]);
        let pos = self
            .proof
            .lines
            .iter()
            .rposition(|l| l.sequent == target)
            .expect("checked input proves its formula");
        pos + 1
    }

    fn finish(mut self, goal: Formula) -> Proof {
        self.proof.goal = Some(goal);
        self.proof
    }
}

fn adjunction(a: &Premise, b: &Premise) -> Result<Proof, DerivedError> {
    let mut bld = Builder::new();
    let la = bld.include(a, 0);
    let lb = bld.include(b, 0);
    let conj = Formula::and(a.formula.clone(), b.formula.clone());
    bld.push(vec![], vec![at(&conj, 0, 0)], Justification::AndR([la, lb]));
    Ok(bld.finish(conj))
}

fn modus_ponens(imp: &Premise, ante: &Premise) -> Result<Proof, DerivedError> {
    let (a, b) = implication(imp, "first input")?;
    expect_eq(&ante.formula, &a, "second input")?;
    let mut bld = Builder::new();
    let l1 = bld.include(imp, 0);
    let l2 = bld.include(ante, 0);
    let l3 = bld.axiom(&b, 0, 0);
    let l4 = bld.push(
        vec![at(&imp.formula, 0, 0)],
        vec![at(&b, 0, 0)],
        Justification::ImpL([l2, l3]),
    );
    bld.push(
        vec![],
        vec![at(&b, 0, 0)],
        Justification::Cut {
            premises: [l1, l4],
            on: None,
        },
    );
    Ok(bld.finish(b))
}

fn disjunctive_syllogism(disj: &Premise, neg: &Premise) -> Result<Proof, DerivedError> {
    let Formula::Or(a, b) = &disj.formula else {
        return Err(DerivedError::PremiseMismatch(format!(
            "first input must be a disjunction, got {}",
            disj.formula
        )));
    };
    expect_eq(&neg.formula, &Formula::not((**a).clone()), "second input")?;
    let mut bld = Builder::new();
    let l1 = bld.include(disj, 0);
    let l2 = bld.include(neg, 0);
    let l3 = bld.axiom(a, 0, 0);
    let l4 = bld.axiom(b, 0, 0);
    let l5 = bld.push(
        vec![at(&disj.formula, 0, 0)],
        vec![at(a, 0, 0), at(b, 0, 0)],
        Justification::OrL([l3, l4]),
    );
    let l6 = bld.push(
        vec![],
        vec![at(a, 0, 0), at(b, 0, 0)],
        Justification::Cut {
            premises: [l1, l5],
            on: None,
        },
    );
    let l7 = bld.push(
        vec![at(&neg.formula, 0, 0)],
        vec![at(b, 0, 0)],
        Justification::NegL(l6),
    );
    bld.push(
        vec![],
        vec![at(b, 0, 0)],
        Justification::Cut {
            premises: [l2, l7],
            on: None,
        },
    );
    Ok(bld.finish((**b).clone()))
}

fn transitivity(ab: &Premise, bc: &Premise) -> Result<Proof, DerivedError> {
    let (a, b) = implication(ab, "first input")?;
    let (b2, c) = implication(bc, "second input")?;
    expect_eq(&b2, &b, "antecedent of the second input")?;
    let mut bld = Builder::new();
    let l1 = bld.include(ab, 0);
    let l2 = bld.axiom(&a, 1, 0);
    let l3 = bld.axiom(&b, 1, 0);
    let l4 = bld.push(
        vec![at(&ab.formula, 0, 0), at(&a, 1, 0)],
        vec![at(&b, 1, 0)],
        Justification::ImpL([l2, l3]),
    );
    let l5 = bld.push(
        vec![at(&a, 1, 0)],
        vec![at(&b, 1, 0)],
        Justification::Cut {
            premises: [l1, l4],
            on: None,
        },
    );
    let l6 = bld.include(bc, 0);
    let l7 = bld.axiom(&b, 1, 0);
    let l8 = bld.axiom(&c, 1, 0);
    let l9 = bld.push(
        vec![at(&bc.formula, 0, 0), at(&b, 1, 0)],
        vec![at(&c, 1, 0)],
        Justification::ImpL([l7, l8]),
    );
    let l10 = bld.push(
        vec![at(&b, 1, 0)],
        vec![at(&c, 1, 0)],
        Justification::Cut {
            premises: [l6, l9],
            on: None,
        },
    );
    let l11 = bld.push(
        vec![at(&a, 1, 0)],
        vec![at(&c, 1, 0)],
        Justification::Cut {
            premises: [l5, l10],
            on: None,
        },
    );
    let goal = Formula::implies(a, c);
    bld.push(
        vec![],
        vec![at(&goal, 0, 0)],
        Justification::ImpR {
            premise: l11,
            eigen: 1,
        },
    );
    Ok(bld.finish(goal))
}

fn contraposition(ab: &Premise) -> Result<Proof, DerivedError> {
    let (a, b) = implication(ab, "input")?;
    let (na, nb) = (Formula::not(a.clone()), Formula::not(b.clone()));
    let mut bld = Builder::new();
    let l1 = bld.include(ab, 1);
    let l2 = bld.axiom(&a, 0, 1);
    let l3 = bld.axiom(&b, 0, 1);
    let l4 = bld.push(
        vec![at(&a, 0, 1), at(&ab.formula, 1, 1)],
        vec![at(&b, 0, 1)],
        Justification::ImpL([l2, l3]),
    );
    let l5 = bld.push(
        vec![at(&a, 0, 1)],
        vec![at(&b, 0, 1)],
        Justification::Cut {
            premises: [l1, l4],
            on: None,
        },
    );
    let l6 = bld.push(
        vec![],
        vec![at(&b, 0, 1), at(&na, 1, 0)],
        Justification::NegR(l5),
    );
    let l7 = bld.push(
        vec![at(&nb, 1, 0)],
        vec![at(&na, 1, 0)],
        Justification::NegL(l6),
    );
    let goal = Formula::implies(nb, na);
    bld.push(
        vec![],
        vec![at(&goal, 0, 0)],
        Justification::ImpR {
            premise: l7,
            eigen: 1,
        },
    );
    Ok(bld.finish(goal))
}

fn contraposition2(anb: &Premise) -> Result<Proof, DerivedError> {
    let (a, nb) = implication(anb, "input")?;
    let Formula::Not(b) = &nb else {
        return Err(DerivedError::PremiseMismatch(format!(
            "consequent must be a negation, got {nb}"
        )));
    };
    let na = Formula::not(a.clone());
    let mut bld = Builder::new();
    let l1 = bld.include(anb, 1);
    let l2 = bld.axiom(&a, 0, 1);
    let l3 = bld.axiom(b, 1, 0);
    let l4 = bld.push(
        vec![at(&nb, 0, 1), at(b, 1, 0)],
        vec![],
        Justification::NegL(l3),
    );
    let l5 = bld.push(
        vec![at(&anb.formula, 1, 1), at(b, 1, 0), at(&a, 0, 1)],
        vec![],
        Justification::ImpL([l2, l4]),
    );
    let l6 = bld.push(
        vec![at(b, 1, 0), at(&a, 0, 1)],
        vec![],
        Justification::Cut {
            premises: [l1, l5],
            on: None,
        },
    );
    let l7 = bld.push(
        vec![at(b, 1, 0)],
        vec![at(&na, 1, 0)],
        Justification::NegR(l6),
    );
    let goal = Formula::implies((**b).clone(), na);
    bld.push(
        vec![],
        vec![at(&goal, 0, 0)],
        Justification::ImpR {
            premise: l7,
            eigen: 1,
        },
    );
    Ok(bld.finish(goal))
}

fn cut(abc: &Premise, bca: &Premise) -> Result<Proof, DerivedError> {
    let (ab, c) = implication(abc, "first input")?;
    let Formula::And(a, b) = &ab else {
        return Err(DerivedError::PremiseMismatch(format!(
            "antecedent must be a conjunction, got {ab}"
        )));
    };
    let (b2, ca) = implication(bca, "second input")?;
    expect_eq(&b2, b, "antecedent of the second input")?;
    expect_eq(
        &ca,
        &Formula::or(c.clone(), (**a).clone()),
        "consequent of the second input",
    )?;
    let mut bld = Builder::new();
    let l4 = bld.include(bca, 0);
    let l1 = bld.axiom(b, 1, 0);
    let l2 = bld.axiom(&ca, 1, 0);
    let l3 = bld.push(
        vec![at(&bca.formula, 0, 0), at(b, 1, 0)],
        vec![at(&ca, 1, 0)],
        Justification::ImpL([l1, l2]),
    );
    let l5 = bld.push(
        vec![at(b, 1, 0)],
        vec![at(&ca, 1, 0)],
        Justification::Cut {
            premises: [l3, l4],
            on: None,
        },
    );
    let l6 = bld.axiom(&c, 1, 0);
    let l7 = bld.axiom(a, 1, 0);
    let l8 = bld.push(
        vec![at(&ca, 1, 0)],
        vec![at(&c, 1, 0), at(a, 1, 0)],
        Justification::OrL([l6, l7]),
    );
    let l9 = bld.push(
        vec![at(b, 1, 0)],
        vec![at(&c, 1, 0), at(a, 1, 0)],
        Justification::Cut {
            premises: [l5, l8],
            on: None,
        },
    );
    let l13 = bld.include(abc, 0);
    let l10 = bld.axiom(&ab, 1, 0);
    let l11 = bld.axiom(&c, 1, 0);
    let l12 = bld.push(
        vec![at(&abc.formula, 0, 0), at(&ab, 1, 0)],
        vec![at(&c, 1, 0)],
        Justification::ImpL([l10, l11]),
    );
    let l14 = bld.push(
        vec![at(&ab, 1, 0)],
        vec![at(&c, 1, 0)],
        Justification::Cut {
            premises: [l12, l13],
            on: None,
        },
    );
    let l15 = bld.axiom(a, 1, 0);
    let l16 = bld.axiom(b, 1, 0);
    let l17 = bld.push(
        vec![at(a, 1, 0), at(b, 1, 0)],
        vec![at(&ab, 1, 0)],
        Justification::AndR([l15, l16]),
    );
    let l18 = bld.push(
        vec![at(a, 1, 0), at(b, 1, 0)],
        vec![at(&c, 1, 0)],
        Justification::Cut {
            premises: [l14, l17],
            on: None,
        },
    );
    let l19 = bld.push(
        vec![at(b, 1, 0)],
        vec![at(&c, 1, 0)],
        Justification::Cut {
            premises: [l9, l18],
            on: None,
        },
    );
    let goal = Formula::implies((**b).clone(), c);
    bld.push(
        vec![],
        vec![at(&goal, 0, 0)],
        Justification::ImpR {
            premise: l19,
            eigen: 1,
        },
    );
    Ok(bld.finish(goal))
}

fn erule(a: &Premise, b: &Formula) -> Result<Proof, DerivedError> {
    let ab = Formula::implies(a.formula.clone(), b.clone());
    let mut bld = Builder::new();
    let l1 = bld.include(a, 1);
    let l2 = bld.axiom(b, 1, 0);
    let l3 = bld.push(
        vec![at(&ab, 1, 0)],
        vec![at(b, 1, 0)],
        Justification::ImpL([l1, l2]),
    );
    let goal = Formula::implies(ab, b.clone());
    bld.push(
        vec![],
        vec![at(&goal, 0, 0)],
        Justification::ImpR {
            premise: l3,
            eigen: 1,
        },
    );
    Ok(bld.finish(goal))
}

fn suffixing(ab: &Premise, c: &Formula) -> Result<Proof, DerivedError> {
    let (a, b) = implication(ab, "input")?;
    let bc = Formula::implies(b.clone(), c.clone());
    let ac = Formula::implies(a.clone(), c.clone());
    let mut bld = Builder::new();
    let l1 = bld.include(ab, 1);
    let l2 = bld.axiom(&a, 2, 1);
    let l3 = bld.axiom(&b, 2, 1);
    let l4 = bld.push(
        vec![at(&ab.formula, 1, 1), at(&a, 2, 1)],
        vec![at(&b, 2, 1)],
        Justification::ImpL([l2, l3]),
    );
    let l5 = bld.axiom(c, 2, 0);
    let l6 = bld.push(
        vec![at(&bc, 1, 0), at(&b, 2, 1)],
        vec![at(c, 2, 0)],
        Justification::ImpL([l3, l5]),
    );
    let l7 = bld.push(
        vec![at(&a, 2, 1)],
        vec![at(&b, 2, 1)],
        Justification::Cut {
            premises: [l1, l4],
            on: None,
        },
    );
    let l8 = bld.push(
        vec![at(&bc, 1, 0), at(&a, 2, 1)],
        vec![at(c, 2, 0)],
        Justification::Cut {
            premises: [l6, l7],
            on: None,
        },
    );
    let l9 = bld.push(
        vec![at(&bc, 1, 0)],
        vec![at(&ac, 1, 0)],
        Justification::ImpR {
            premise: l8,
            eigen: 2,
        },
    );
    let goal = Formula::implies(bc, ac);
    bld.push(
        vec![],
        vec![at(&goal, 0, 0)],
        Justification::ImpR {
            premise: l9,
            eigen: 1,
        },
    );
    Ok(bld.finish(goal))
}

fn cycling(abc: &Premise) -> Result<Proof, DerivedError> {
    let (a, bc) = implication(abc, "input")?;
    let Formula::Implies(b, c) = &bc else {
        return Err(DerivedError::PremiseMismatch(format!(
            "consequent must be an implication, got {bc}"
        )));
    };
    let (na, nc) = (Formula::not(a.clone()), Formula::not((**c).clone()));
    let mut bld = Builder::new();
    let l1 = bld.axiom(&a, 0, 2);
    let l2 = bld.axiom(&bc, 0, 2);
    let l3 = bld.push(
        vec![at(&abc.formula, 2, 2), at(&a, 0, 2)],
        vec![at(&bc, 0, 2)],
        Justification::ImpL([l1, l2]),
    );
    let l4 = bld.include(abc, 2);
    let l5 = bld.push(
        vec![at(&a, 0, 2)],
        vec![at(&bc, 0, 2)],
        Justification::Cut {
            premises: [l3, l4],
            on: None,
        },
    );
    let l6 = bld.axiom(b, 1, 0);
    let l7 = bld.axiom(c, 1, 2);
    let l8 = bld.push(
        vec![at(&bc, 0, 2), at(b, 1, 0)],
        vec![at(c, 1, 2)],
        Justification::ImpL([l6, l7]),
    );
    let l9 = bld.push(
        vec![at(&a, 0, 2), at(b, 1, 0)],
        vec![at(c, 1, 2)],
        Justification::Cut {
            premises: [l5, l8],
            on: None,
        },
    );
    let l10 = bld.push(
        vec![at(b, 1, 0)],
        vec![at(c, 1, 2), at(&na, 2, 0)],
        Justification::NegR(l9),
    );
    let l11 = bld.push(
        vec![at(b, 1, 0), at(&nc, 2, 1)],
        vec![at(&na, 2, 0)],
        Justification::NegL(l10),
    );
    let inner = Formula::implies(nc, na);
    let l12 = bld.push(
        vec![at(b, 1, 0)],
        vec![at(&inner, 1, 0)],
        Justification::ImpR {
            premise: l11,
            eigen: 2,
        },
    );
    let goal = Formula::implies((**b).clone(), inner);
    bld.push(
        vec![],
        vec![at(&goal, 0, 0)],
        Justification::ImpR {
            premise: l12,
            eigen: 1,
        },
    );
    Ok(bld.finish(goal))
}

/// `(A -> B) -> ((C -> A) -> (C -> B))` at the given formulas, from the corpus.
fn prefixing_axiom(a: &Formula, b: &Formula, c: &Formula) -> Proof {
    let entry = corpus_entry("prefixingA").expect("prefixing lemma is in the corpus");
    let map: BTreeMap<String, Formula> = [
        ("a".to_string(), a.clone()),
        ("b".to_string(), b.clone()),
        ("c".to_string(), c.clone()),
    ]
    .into();
    substitute_proof(&entry.proof, &map)
}

fn prefixing(ab: &Premise, c: &Formula) -> Result<Proof, DerivedError> {
    let (a, b) = implication(ab, "input")?;
    let axiom = prefixing_axiom(&a, &b, c);
    let f = axiom.conclusion().expect("corpus lemma has a goal");
    modus_ponens(
        &Premise {
            proof: &axiom,
            formula: f,
        },
        ab,
    )
}

fn derived(p: &Proof) -> Premise<'_> {
    Premise {
        proof: p,
        formula: p.conclusion().expect("combinators set a goal"),
    }
}

fn affixing(ab: &Premise, cd: &Premise) -> Result<Proof, DerivedError> {
    let (a, _) = implication(ab, "first input")?;
    let (c, _) = implication(cd, "second input")?;
    let acad = prefixing(cd, &a)?;
    let bcac = suffixing(ab, &c)?;
    transitivity(&derived(&bcac), &derived(&acad))
}

fn monotonic_fusion(ab: &Premise, cd: &Premise) -> Result<Proof, DerivedError> {
    let (a, b) = implication(ab, "first input")?;
    let (c, d) = implication(cd, "second input")?;
    let nd = Formula::not(d.clone());
    let step3 = contraposition(cd)?;
    let step4 = suffixing(ab, &nd)?;
    let step5 = prefixing(&derived(&step3), &a)?;
    let b_nd = Formula::implies(b.clone(), nd);
    let step6 = prefixing(&derived(&step5), &b_nd)?;
    let step7 = modus_ponens(&derived(&step6), &derived(&step4))?;
    let mut out = contraposition(&derived(&step7))?;
    out.goal = Some(Formula::implies(Formula::fusion(a, c), Formula::fusion(b, d)).desugar());
    Ok(out)
}
