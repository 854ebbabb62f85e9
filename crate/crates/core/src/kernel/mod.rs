//! Sequents of indexed assertions and a line-by-line proof checker.
//!
//! An assertion `A[i,j]` pairs a formula with two object indices. A proof is
//! a list of sequents, each an axiom or obtained from earlier lines by one of
//! the rules below; `bound` caps the indices a proof may mention.

pub mod derived;
pub mod script;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

pub const DEFAULT_BOUND: u8 = 4;
pub const MAX_BOUND: u8 = 8;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Assertion {
    pub formula: Formula,
    pub i: u8,
    pub j: u8,
}

impl Assertion {
    pub fn new(formula: Formula, i: u8, j: u8) -> Self {
        Assertion { formula, i, j }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})[{},{}]", self.formula, self.i, self.j)
    }
}

pub type Side = BTreeSet<Assertion>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequent {
    pub left: Side,
    pub right: Side,
}

impl Sequent {
    pub fn new(
        left: impl IntoIterator<Item = Assertion>,
        right: impl IntoIterator<Item = Assertion>,
    ) -> Self {
        Sequent {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        }
    }

    /// `=> A[0,0]`
    pub fn theorem(formula: Formula) -> Self {
        Sequent::new([], [Assertion::new(formula, 0, 0)])
    }

    pub fn assertions(&self) -> impl Iterator<Item = &Assertion> {
        self.left.iter().chain(self.right.iter())
    }

    pub fn indices(&self) -> BTreeSet<u8> {
        self.assertions().flat_map(|a| [a.i, a.j]).collect()
    }

    pub fn is_axiom(&self) -> bool {
        self.left.intersection(&self.right).next().is_some()
    }

    /// The formula `A` when the sequent is exactly `=> A[0,0]`.
    pub fn theorem_formula(&self) -> Option<&Formula> {
        match (self.left.is_empty(), self.right.len()) {
            (true, 1) => {
                let a = self.right.iter().next()?;
                (a.i == 0 && a.j == 0).then_some(&a.formula)
            }
            _ => None,
        }
    }

    fn map_assertions(&self, f: &impl Fn(&Assertion) -> Assertion) -> Sequent {
        Sequent {
            left: self.left.iter().map(f).collect(),
            right: self.right.iter().map(f).collect(),
        }
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, side: &Side) -> fmt::Result {
    let mut printed: Vec<(String, &Assertion)> =
        side.iter().map(|a| (a.formula.to_string(), a)).collect();
    printed.sort_by(|x, y| (&x.0, x.1.i, x.1.j).cmp(&(&y.0, y.1.i, y.1.j)));
    for (n, (_, a)) in printed.iter().enumerate() {
        if n > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, &self.left)?;
        f.write_str(if self.left.is_empty() { "=>" } else { " =>" })?;
        if !self.right.is_empty() {
            f.write_str(" ")?;
        }
        write_side(f, &self.right)
    }
}

/// How a proof line follows from earlier lines. References are 1-based line numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Justification {
    Axiom,
    Cut {
        premises: [usize; 2],
        on: Option<Assertion>,
    },
    Weaken(usize),
    OrL([usize; 2]),
    OrR(usize),
    AndL(usize),
    AndR([usize; 2]),
    NegL(usize),
    NegR(usize),
    ImpL([usize; 2]),
    ImpR {
        premise: usize,
        eigen: u8,
    },
}

impl Justification {
    pub fn rule_name(&self) -> &'static str {
        match self {
            Justification::Axiom => "axiom",
            Justification::Cut { .. } => "cut",
            Justification::Weaken(_) => "weaken",
            Justification::OrL(_) => "orL",
            Justification::OrR(_) => "orR",
            Justification::AndL(_) => "andL",
            Justification::AndR(_) => "andR",
            Justification::NegL(_) => "negL",
            Justification::NegR(_) => "negR",
            Justification::ImpL(_) => "impL",
            Justification::ImpR { .. } => "impR",
        }
    }

    pub fn refs(&self) -> Vec<usize> {
        match self {
            Justification::Axiom => vec![],
            Justification::Cut { premises, .. }
            | Justification::OrL(premises)
            | Justification::AndR(premises)
            | Justification::ImpL(premises) => premises.to_vec(),
            Justification::Weaken(r)
            | Justification::OrR(r)
            | Justification::AndL(r)
            | Justification::NegL(r)
            | Justification::NegR(r)
            | Justification::ImpR { premise: r, .. } => vec![*r],
        }
    }

    /// Same rule with every reference passed through `f`.
    pub fn map_refs(&self, f: impl Fn(usize) -> usize) -> Justification {
        use Justification::*;
        match self {
            Axiom => Axiom,
            Cut {
                premises: [a, b],
                on,
            } => Cut {
                premises: [f(*a), f(*b)],
                on: on.clone(),
            },
            Weaken(r) => Weaken(f(*r)),
            OrL([a, b]) => OrL([f(*a), f(*b)]),
            OrR(r) => OrR(f(*r)),
            AndL(r) => AndL(f(*r)),
            AndR([a, b]) => AndR([f(*a), f(*b)]),
            NegL(r) => NegL(f(*r)),
            NegR(r) => NegR(f(*r)),
            ImpL([a, b]) => ImpL([f(*a), f(*b)]),
            ImpR { premise, eigen } => ImpR {
                premise: f(*premise),
                eigen: *eigen,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofLine {
    pub sequent: Sequent,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub name: Option<String>,
    pub goal: Option<Formula>,
    pub bound: u8,
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn new(bound: u8) -> Self {
        Proof {
            name: None,
            goal: None,
            bound,
            lines: Vec::new(),
        }
    }

    pub fn objects_used(&self) -> BTreeSet<u8> {
        self.lines
            .iter()
            .flat_map(|l| l.sequent.indices())
            .collect()
    }

    /// The formula this proof establishes: its goal, else the last line if it is `=> A[0,0]`.
    pub fn conclusion(&self) -> Option<Formula> {
        if let Some(g) = &self.goal {
            return Some(g.clone());
        }
        self.lines
            .last()
            .and_then(|l| l.sequent.theorem_formula().cloned())
    }

    /// Line number (1-based) of the last line equal to `=> A[0,0]`.
    pub fn theorem_line(&self, formula: &Formula) -> Option<usize> {
        let target = Sequent::theorem(formula.clone());
        self.lines
            .iter()
            .rposition(|l| l.sequent == target)
            .map(|i| i + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleErrorKind {
    BadRef,
    ShapeMismatch,
    EigenvariableViolation,
    IndexOutOfBound,
    NotAxiom,
    GoalNotProved,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("line {line}: {kind:?}")]
pub struct RuleError {
    pub line: usize,
    pub kind: RuleErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: Option<String>,
    pub valid: bool,
    pub lines: usize,
    pub objects_used: BTreeSet<u8>,
    pub level: usize,
    pub first_error: Option<RuleError>,
}

/// Checks line `line` (1-based) of `proof` against the lines before it.
pub fn check_step(proof: &Proof, line: usize) -> Result<(), RuleError> {
    let err = |kind| Err(RuleError { line, kind });
    let here = &proof.lines[line - 1];
    let bound = proof.bound;
    if here
        .sequent
        .assertions()
        .any(|a| a.i >= bound || a.j >= bound)
    {
        return err(RuleErrorKind::IndexOutOfBound);
    }
    if let Justification::ImpR { eigen, .. } = here.justification {
        if eigen >= bound {
            return err(RuleErrorKind::IndexOutOfBound);
        }
    }
    let refs = here.justification.refs();
    if refs.iter().any(|&r| r == 0 || r >= line) {
        return err(RuleErrorKind::BadRef);
    }
    let prem = |k: usize| &proof.lines[refs[k] - 1].sequent;
    let c = &here.sequent;
    let outcome = match &here.justification {
        Justification::Axiom => {
            if c.is_axiom() {
                Outcome::Ok
            } else {
                return err(RuleErrorKind::NotAxiom);
            }
        }
        Justification::Weaken(_) => {
            let p = prem(0);
            Outcome::from(p.left.is_subset(&c.left) && p.right.is_subset(&c.right))
        }
        Justification::AndL(_) => unary_left(prem(0), c, |a| match &a.formula {
            Formula::And(x, y) => Some(vec![at(x, a.i, a.j), at(y, a.i, a.j)]),
            _ => None,
        }),
        Justification::OrR(_) => unary_right(prem(0), c, |a| match &a.formula {
            Formula::Or(x, y) => Some(vec![at(x, a.i, a.j), at(y, a.i, a.j)]),
            _ => None,
        }),
        Justification::NegL(_) => Outcome::from(c.left.iter().any(|principal| {
            match &principal.formula {
                Formula::Not(x) => one_premise(
                    prem(0),
                    c,
                    &[],
                    &[at(x, principal.j, principal.i)],
                    std::slice::from_ref(principal),
                    &[],
                )
                .is_some(),
                _ => false,
            }
        })),
        Justification::NegR(_) => Outcome::from(c.right.iter().any(|principal| {
            match &principal.formula {
                Formula::Not(x) => one_premise(
                    prem(0),
                    c,
                    &[at(x, principal.j, principal.i)],
                    &[],
                    &[],
                    std::slice::from_ref(principal),
                )
                .is_some(),
                _ => false,
            }
        })),
        Justification::ImpR { eigen, .. } => check_imp_r(prem(0), c, *eigen),
        Justification::Cut { on, .. } => Outcome::from(
            check_cut(prem(0), prem(1), c, on.as_ref())
                || check_cut(prem(1), prem(0), c, on.as_ref()),
        ),
        Justification::OrL(_) => {
            Outcome::from(check_or_l(prem(0), prem(1), c) || check_or_l(prem(1), prem(0), c))
        }
        Justification::AndR(_) => {
            Outcome::from(check_and_r(prem(0), prem(1), c) || check_and_r(prem(1), prem(0), c))
        }
        Justification::ImpL(_) => Outcome::from(
            check_imp_l(prem(0), prem(1), c, bound) || check_imp_l(prem(1), prem(0), c, bound),
        ),
    };
    match outcome {
        Outcome::Ok => Ok(()),
        Outcome::Shape => err(RuleErrorKind::ShapeMismatch),
        Outcome::Eigen => err(RuleErrorKind::EigenvariableViolation),
    }
}

pub fn check_proof(proof: &Proof) -> CheckReport {
    let mut first_error = None;
    if proof.bound == 0 || proof.bound > MAX_BOUND {
        first_error = Some(RuleError {
            line: 0,
            kind: RuleErrorKind::IndexOutOfBound,
        });
    }
    if first_error.is_none() {
        first_error = (1..=proof.lines.len()).find_map(|n| check_step(proof, n).err());
    }
    if first_error.is_none() {
        if let Some(goal) = &proof.goal {
            if proof.theorem_line(goal).is_none() {
                first_error = Some(RuleError {
                    line: proof.lines.len(),
                    kind: RuleErrorKind::GoalNotProved,
                });
            }
        }
    }
    let objects_used = proof.objects_used();
    CheckReport {
        name: proof.name.clone(),
        valid: first_error.is_none(),
        lines: proof.lines.len(),
        level: objects_used.len(),
        objects_used,
        first_error,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("index map is not a bijection on 0..{0}")]
    NotABijection(u8),
}

/// Renames every index `k` (including eigen indices) to `perm[k]`.
pub fn permute_indices(proof: &Proof, perm: &[u8]) -> Result<Proof, PermutationError> {
    let n = proof.bound;
    let image: BTreeSet<u8> = perm.iter().copied().collect();
    if perm.len() != n as usize || image.len() != perm.len() || image.iter().any(|&k| k >= n) {
        return Err(PermutationError::NotABijection(n));
    }
    let rename =
        |a: &Assertion| Assertion::new(a.formula.clone(), perm[a.i as usize], perm[a.j as usize]);
    let lines = proof
        .lines
        .iter()
        .map(|l| ProofLine {
            sequent: l.sequent.map_assertions(&rename),
            justification: match &l.justification {
                Justification::ImpR { premise, eigen } => Justification::ImpR {
                    premise: *premise,
                    eigen: perm[*eigen as usize],
                },
                Justification::Cut { premises, on } => Justification::Cut {
                    premises: *premises,
                    on: on.as_ref().map(rename),
                },
                other => other.clone(),
            },
        })
        .collect();
    Ok(Proof {
        name: proof.name.clone(),
        goal: None,
        bound: n,
        lines,
    })
}

/// The transposition of `a` and `b` on `0..bound`.
pub fn transposition(a: u8, b: u8, bound: u8) -> Vec<u8> {
    (0..bound)
        .map(|k| {
            if k == a {
                b
            } else if k == b {
                a
            } else {
                k
            }
        })
        .collect()
}

/// Applies a formula substitution to every line, the cut formulas and the goal.
/// Rule instances stay rule instances, so a valid proof stays valid.
pub fn substitute_proof(proof: &Proof, map: &BTreeMap<String, Formula>) -> Proof {
    let sub = |a: &Assertion| Assertion::new(a.formula.substitute(map), a.i, a.j);
    Proof {
        name: proof.name.clone(),
        goal: proof.goal.as_ref().map(|g| g.substitute(map)),
        bound: proof.bound,
        lines: proof
            .lines
            .iter()
            .map(|l| ProofLine {
                sequent: l.sequent.map_assertions(&sub),
                justification: match &l.justification {
                    Justification::Cut { premises, on } => Justification::Cut {
                        premises: *premises,
                        on: on.as_ref().map(sub),
                    },
                    other => other.clone(),
                },
            })
            .collect(),
    }
}

enum Outcome {
    Ok,
    Shape,
    Eigen,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Ok
        } else {
            Outcome::Shape
        }
    }
}

fn at(f: &Formula, i: u8, j: u8) -> Assertion {
    Assertion::new(f.clone(), i, j)
}

/// Finds the smallest contexts `(G, D)` with `premise = G,pl => D,pr` and
/// `conclusion = G,cl => D,cr`.
fn one_premise(
    premise: &Sequent,
    conclusion: &Sequent,
    pl: &[Assertion],
    pr: &[Assertion],
    cl: &[Assertion],
    cr: &[Assertion],
) -> Option<(Side, Side)> {
    Some((
        shared_context(&premise.left, &conclusion.left, pl, cl)?,
        shared_context(&premise.right, &conclusion.right, pr, cr)?,
    ))
}

fn shared_context(p: &Side, c: &Side, pa: &[Assertion], ca: &[Assertion]) -> Option<Side> {
    if !pa.iter().all(|a| p.contains(a)) || !ca.iter().all(|a| c.contains(a)) {
        return None;
    }
    let ctx: Side = p
        .iter()
        .filter(|a| !pa.contains(a))
        .chain(c.iter().filter(|a| !ca.contains(a)))
        .cloned()
        .collect();
    (ctx.is_subset(p) && ctx.is_subset(c)).then_some(ctx)
}

fn unary_left(
    p: &Sequent,
    c: &Sequent,
    split: impl Fn(&Assertion) -> Option<Vec<Assertion>>,
) -> Outcome {
    Outcome::from(c.left.iter().any(|principal| {
        split(principal).is_some_and(|parts| {
            one_premise(p, c, &parts, &[], std::slice::from_ref(principal), &[]).is_some()
        })
    }))
}

fn unary_right(
    p: &Sequent,
    c: &Sequent,
    split: impl Fn(&Assertion) -> Option<Vec<Assertion>>,
) -> Outcome {
    Outcome::from(c.right.iter().any(|principal| {
        split(principal).is_some_and(|parts| {
            one_premise(p, c, &[], &parts, &[], std::slice::from_ref(principal)).is_some()
        })
    }))
}

fn check_imp_r(p: &Sequent, c: &Sequent, k: u8) -> Outcome {
    let mut shape_matched = false;
    for principal in &c.right {
        let Formula::Implies(x, y) = &principal.formula else {
            continue;
        };
        let (i, j) = (principal.i, principal.j);
        let Some((gamma, delta)) = one_premise(
            p,
            c,
            &[at(x, k, i)],
            &[at(y, k, j)],
            &[],
            std::slice::from_ref(principal),
        ) else {
            continue;
        };
        shape_matched = true;
        let fresh = k != i
            && k != j
            && gamma
                .iter()
                .chain(delta.iter())
                .all(|a| a.i != k && a.j != k);
        if fresh {
            return Outcome::Ok;
        }
    }
    if shape_matched {
        Outcome::Eigen
    } else {
        Outcome::Shape
    }
}

/// `side` with `active` optionally removed; empty when `active` is absent.
fn variants(side: &Side, active: &Assertion) -> Vec<Side> {
    if !side.contains(active) {
        return vec![];
    }
    let mut without = side.clone();
    without.remove(active);
    vec![without, side.clone()]
}

fn union(parts: &[&Side]) -> Side {
    parts.iter().flat_map(|s| s.iter().cloned()).collect()
}

fn check_cut(p1: &Sequent, p2: &Sequent, c: &Sequent, on: Option<&Assertion>) -> bool {
    let candidates: Vec<&Assertion> = match on {
        Some(a) => vec![a],
        None => p1.right.intersection(&p2.left).collect(),
    };
    candidates.into_iter().any(|a| {
        variants(&p2.left, a)
            .iter()
            .any(|g2| c.left == union(&[&p1.left, g2]))
            && variants(&p1.right, a)
                .iter()
                .any(|d1| c.right == union(&[d1, &p2.right]))
    })
}

fn check_or_l(p1: &Sequent, p2: &Sequent, c: &Sequent) -> bool {
    if c.right != union(&[&p1.right, &p2.right]) {
        return false;
    }
    c.left.iter().any(|principal| {
        let Formula::Or(x, y) = &principal.formula else {
            return false;
        };
        let (i, j) = (principal.i, principal.j);
        let pa = Side::from([principal.clone()]);
        variants(&p1.left, &at(x, i, j)).iter().any(|g1| {
            variants(&p2.left, &at(y, i, j))
                .iter()
                .any(|g2| c.left == union(&[g1, g2, &pa]))
        })
    })
}

fn check_and_r(p1: &Sequent, p2: &Sequent, c: &Sequent) -> bool {
    if c.left != union(&[&p1.left, &p2.left]) {
        return false;
    }
    c.right.iter().any(|principal| {
        let Formula::And(x, y) = &principal.formula else {
            return false;
        };
        let (i, j) = (principal.i, principal.j);
        let pa = Side::from([principal.clone()]);
        variants(&p1.right, &at(x, i, j)).iter().any(|d1| {
            variants(&p2.right, &at(y, i, j))
                .iter()
                .any(|d2| c.right == union(&[d1, d2, &pa]))
        })
    })
}

fn check_imp_l(p1: &Sequent, p2: &Sequent, c: &Sequent, bound: u8) -> bool {
    c.left.iter().any(|principal| {
        let Formula::Implies(x, y) = &principal.formula else {
            return false;
        };
        let (i, j) = (principal.i, principal.j);
        let pa = Side::from([principal.clone()]);
        (0..bound).any(|k| {
            variants(&p1.right, &at(x, k, i))
                .iter()
                .any(|d1| c.right == union(&[d1, &p2.right]))
                && variants(&p2.left, &at(y, k, j))
                    .iter()
                    .any(|g2| c.left == union(&[&p1.left, g2, &pa]))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn a(s: &str, i: u8, j: u8) -> Assertion {
        Assertion::new(parse_formula(s).unwrap(), i, j)
    }

    fn proof(lines: Vec<(Sequent, Justification)>) -> Proof {
        Proof {
            name: None,
            goal: None,
            bound: 4,
            lines: lines
                .into_iter()
                .map(|(sequent, justification)| ProofLine {
                    sequent,
                    justification,
                })
                .collect(),
        }
    }

    fn identity_proof() -> Proof {
        proof(vec![
            (
                Sequent::new([a("p", 1, 0)], [a("p", 1, 0)]),
                Justification::Axiom,
            ),
            (
                Sequent::new([], [a("p -> p", 0, 0)]),
                Justification::ImpR {
                    premise: 1,
                    eigen: 1,
                },
            ),
        ])
    }

    #[test]
    fn identity_checks() {
        let r = check_proof(&identity_proof());
        assert!(r.valid, "{r:?}");
        assert_eq!(r.objects_used, BTreeSet::from([0, 1]));
        assert_eq!(r.level, 2);
    }

    #[test]
    fn eigen_index_must_be_fresh() {
        let mut p = identity_proof();
        p.lines[0].sequent = Sequent::new([a("p", 0, 0)], [a("p", 0, 0)]);
        p.lines[1].justification = Justification::ImpR {
            premise: 1,
            eigen: 0,
        };
        assert_eq!(
            check_proof(&p).first_error.unwrap().kind,
            RuleErrorKind::EigenvariableViolation
        );
    }

    #[test]
    fn error_kinds() {
        let mut p = identity_proof();
        p.lines[1].justification = Justification::ImpR {
            premise: 2,
            eigen: 1,
        };
        assert_eq!(
            check_proof(&p).first_error.unwrap().kind,
            RuleErrorKind::BadRef
        );
        p.lines[1].justification = Justification::AndL(1);
        assert_eq!(
            check_proof(&p).first_error.unwrap().kind,
            RuleErrorKind::ShapeMismatch
        );
        p.lines[0].sequent = Sequent::new([a("p", 1, 0)], [a("q", 1, 0)]);
        assert_eq!(
            check_proof(&p).first_error.unwrap(),
            RuleError {
                line: 1,
                kind: RuleErrorKind::NotAxiom
            }
        );
        p.bound = 1;
        assert_eq!(
            check_proof(&p).first_error.unwrap().kind,
            RuleErrorKind::IndexOutOfBound
        );
    }

    #[test]
    fn context_may_contain_the_principal() {
        // Gamma may already hold (p & q)[0,1] in the premise.
        let pq = a("p & q", 0, 1);
        let p = proof(vec![
            (
                Sequent::new([pq.clone()], [pq.clone()]),
                Justification::Axiom,
            ),
            (
                Sequent::new([a("p", 0, 1), a("q", 0, 1), pq.clone()], [pq.clone()]),
                Justification::Weaken(1),
            ),
            (Sequent::new([pq.clone()], [pq]), Justification::AndL(2)),
        ]);
        assert!(check_proof(&p).valid);
    }

    #[test]
    fn goal_must_appear() {
        let mut p = identity_proof();
        p.goal = Some(parse_formula("q -> q").unwrap());
        assert_eq!(
            check_proof(&p).first_error.unwrap().kind,
            RuleErrorKind::GoalNotProved
        );
        p.goal = Some(parse_formula("p -> p").unwrap());
        assert!(check_proof(&p).valid);
    }

    #[test]
    fn permutation_preserves_validity() {
        let p = identity_proof();
        let q = permute_indices(&p, &transposition(0, 1, 4)).unwrap();
        assert!(check_proof(&q).valid);
        assert_eq!(q.lines[1].sequent, Sequent::new([], [a("p -> p", 1, 1)]));
        assert!(matches!(
            q.lines[1].justification,
            Justification::ImpR { eigen: 0, .. }
        ));
        assert!(permute_indices(&p, &[0, 0, 1, 2]).is_err());
    }
}
