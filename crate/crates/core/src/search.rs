//! Bounded backward proof search, cut-free.
//!
//! Rules other than `->` on the left are invertible and applied eagerly, one
//! principal at a time. `impL` is the only choice point: the principal, and
//! the middle index `k`. The principal stays in both premises, so it may be
//! used again higher up. A goal that repeats an ancestor up to renaming of
//! indices is abandoned.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::formula::Formula;
use crate::kernel::{Assertion, Justification, Proof, ProofLine, Sequent, MAX_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_depth: usize,
    /// Indices range over `0..max_index`.
    pub max_index: u8,
    pub max_nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 12,
            max_index: 4,
            max_nodes: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("budget fields must be positive and max_index at most {MAX_BOUND}")]
    InvalidBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Proof),
    /// Every branch within the depth and index bounds failed.
    NotFound,
    BudgetExhausted,
}

pub fn search_proof(goal: &Formula, budget: SearchBudget) -> Result<SearchOutcome, SearchError> {
    if budget.max_depth == 0
        || budget.max_nodes == 0
        || budget.max_index == 0
        || budget.max_index > MAX_BOUND
    {
        return Err(SearchError::InvalidBudget);
    }
    let goal = goal.desugar();
    let mut s = Searcher {
        budget,
        nodes: 0,
        path: Vec::new(),
    };
    let root = Sequent::theorem(goal.clone());
    Ok(match s.prove(&root, budget.max_depth) {
        Err(Exhausted) => SearchOutcome::BudgetExhausted,
        Ok(None) => SearchOutcome::NotFound,
        Ok(Some(tree)) => {
            let mut proof = Proof::new(budget.max_index);
            proof.goal = Some(goal);
            let mut emitted = HashMap::new();
            emit(&tree, &mut proof, &mut emitted);
            SearchOutcome::Found(proof)
        }
    })
}

struct Exhausted;

enum Rule {
    Axiom,
    AndL,
    NegL,
    OrR,
    NegR,
    ImpR(u8),
    AndR,
    OrL,
    ImpL,
}

struct Tree {
    sequent: Sequent,
    rule: Rule,
    premises: Vec<Tree>,
}

struct Searcher {
    budget: SearchBudget,
    nodes: usize,
    path: Vec<Sequent>,
}

fn at(f: &Formula, i: u8, j: u8) -> Assertion {
    Assertion::new(f.clone(), i, j)
}

fn without(s: &Sequent, p: &Assertion, left: bool) -> Sequent {
    let mut out = s.clone();
    if left {
        out.left.remove(p);
    } else {
        out.right.remove(p);
    }
    out
}

/// Renames indices in order of first occurrence, for loop detection.
fn canonical(s: &Sequent) -> Sequent {
    let mut map: BTreeMap<u8, u8> = BTreeMap::new();
    let mut rename = |k: u8| {
        let next = map.len() as u8;
        *map.entry(k).or_insert(next)
    };
    let mut left = Vec::new();
    for a in &s.left {
        left.push(Assertion::new(a.formula.clone(), rename(a.i), rename(a.j)));
    }
    let mut right = Vec::new();
    for a in &s.right {
        right.push(Assertion::new(a.formula.clone(), rename(a.i), rename(a.j)));
    }
    Sequent::new(left, right)
}

impl Searcher {
    fn prove(&mut self, s: &Sequent, depth: usize) -> Result<Option<Tree>, Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Exhausted);
        }
        if s.is_axiom() {
            return Ok(Some(Tree {
                sequent: s.clone(),
                rule: Rule::Axiom,
                premises: Vec::new(),
            }));
        }
        if depth == 0 {
            return Ok(None);
        }
        let key = canonical(s);
        if self.path.contains(&key) {
            return Ok(None);
        }
        self.path.push(key);
        let out = self.expand(s, depth);
        self.path.pop();
        out
    }

    fn expand(&mut self, s: &Sequent, depth: usize) -> Result<Option<Tree>, Exhausted> {
        if let Some((rule, premises)) = self.invertible(s) {
            let mut kids = Vec::new();
            for p in &premises {
                match self.prove(p, depth - 1)? {
                    Some(t) => kids.push(t),
                    None => return Ok(None),
                }
            }
            return Ok(Some(Tree {
                sequent: s.clone(),
                rule,
                premises: kids,
            }));
        }
        let implications: Vec<(Formula, Formula, u8, u8)> = s
            .left
            .iter()
            .filter_map(|a| match &a.formula {
                Formula::Implies(x, y) => Some(((**x).clone(), (**y).clone(), a.i, a.j)),
                _ => None,
            })
            .collect();
        for (x, y, i, j) in implications {
            for k in 0..self.budget.max_index {
                let mut first = s.clone();
                first.right.insert(at(&x, k, i));
                let Some(t1) = self.prove(&first, depth - 1)? else {
                    continue;
                };
                let mut second = s.clone();
                second.left.insert(at(&y, k, j));
                if let Some(t2) = self.prove(&second, depth - 1)? {
                    return Ok(Some(Tree {
                        sequent: s.clone(),
                        rule: Rule::ImpL,
                        premises: vec![t1, t2],
                    }));
                }
            }
        }
        Ok(None)
    }

    fn fresh(&self, s: &Sequent) -> Option<u8> {
        let used = s.indices();
        (0..self.budget.max_index).find(|k| !used.contains(k))
    }

    fn invertible(&self, s: &Sequent) -> Option<(Rule, Vec<Sequent>)> {
        let mut branching = None;
        for a in &s.left {
            let rest = || without(s, a, true);
            match &a.formula {
                Formula::And(x, y) => {
                    let mut p = rest();
                    p.left.insert(at(x, a.i, a.j));
                    p.left.insert(at(y, a.i, a.j));
                    return Some((Rule::AndL, vec![p]));
                }
                Formula::Not(x) => {
                    let mut p = rest();
                    p.right.insert(at(x, a.j, a.i));
                    return Some((Rule::NegL, vec![p]));
                }
                Formula::Or(x, y) if branching.is_none() => {
                    let (mut p, mut q) = (rest(), rest());
                    p.left.insert(at(x, a.i, a.j));
                    q.left.insert(at(y, a.i, a.j));
                    branching = Some((Rule::OrL, vec![p, q]));
                }
                _ => {}
            }
        }
        for a in &s.right {
            let rest = || without(s, a, false);
            match &a.formula {
                Formula::Or(x, y) => {
                    let mut p = rest();
                    p.right.insert(at(x, a.i, a.j));
                    p.right.insert(at(y, a.i, a.j));
                    return Some((Rule::OrR, vec![p]));
                }
                Formula::Not(x) => {
                    let mut p = rest();
                    p.left.insert(at(x, a.j, a.i));
                    return Some((Rule::NegR, vec![p]));
                }
                Formula::Implies(x, y) => {
                    let p = rest();
                    if let Some(k) = self.fresh(s) {
                        let mut p = p;
                        p.left.insert(at(x, k, a.i));
                        p.right.insert(at(y, k, a.j));
                        return Some((Rule::ImpR(k), vec![p]));
                    }
                }
                Formula::And(x, y) if branching.is_none() => {
                    let (mut p, mut q) = (rest(), rest());
                    p.right.insert(at(x, a.i, a.j));
                    q.right.insert(at(y, a.i, a.j));
                    branching = Some((Rule::AndR, vec![p, q]));
                }
                _ => {}
            }
        }
        branching
    }
}

fn emit(t: &Tree, proof: &mut Proof, emitted: &mut HashMap<Sequent, usize>) -> usize {
    if let Some(&n) = emitted.get(&t.sequent) {
        return n;
    }
    let refs: Vec<usize> = t.premises.iter().map(|p| emit(p, proof, emitted)).collect();
    let justification = match t.rule {
        Rule::Axiom => Justification::Axiom,
        Rule::AndL => Justification::AndL(refs[0]),
        Rule::NegL => Justification::NegL(refs[0]),
        Rule::OrR => Justification::OrR(refs[0]),
        Rule::NegR => Justification::NegR(refs[0]),
        Rule::ImpR(k) => Justification::ImpR {
            premise: refs[0],
            eigen: k,
        },
        Rule::AndR => Justification::AndR([refs[0], refs[1]]),
        Rule::OrL => Justification::OrL([refs[0], refs[1]]),
        Rule::ImpL => Justification::ImpL([refs[0], refs[1]]),
    };
    proof.lines.push(ProofLine {
        sequent: t.sequent.clone(),
        justification,
    });
    let n = proof.lines.len();
    emitted.insert(t.sequent.clone(), n);
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{all_structures, list_corpus};
    use crate::exec::Exec;
    use crate::formula::{parse_formula, random_formula};
    use crate::kernel::check_proof;
    use crate::models::valid_in;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn budget(depth: usize) -> SearchBudget {
        SearchBudget {
            max_depth: depth,
            ..SearchBudget::default()
        }
    }

    fn found(goal: &str, depth: usize) -> Proof {
        match search_proof(&parse_formula(goal).unwrap(), budget(depth)).unwrap() {
            SearchOutcome::Found(p) => {
                let r = check_proof(&p);
                assert!(
                    r.valid,
                    "{goal}: {:?}\n{}",
                    r.first_error,
                    crate::kernel::script::print_script(&p)
                );
                p
            }
            other => panic!("{goal}: {other:?}"),
        }
    }

    #[test]
    fn small_theorems() {
        found("a -> a", 4);
        assert_eq!(found("a & b -> a", 6).objects_used().len(), 2);
        found("a | ~a", 4);
        found("~~a -> a", 6);
        found("(a -> b) -> (c -> a) -> c -> b", 10);
    }

    #[test]
    fn mingle_is_not_found() {
        let out = search_proof(&parse_formula("p -> (p -> p)").unwrap(), budget(10)).unwrap();
        assert!(!matches!(out, SearchOutcome::Found(_)));
    }

    #[test]
    fn rejects_bad_budgets() {
        let f = parse_formula("a").unwrap();
        assert!(search_proof(
            &f,
            SearchBudget {
                max_index: 9,
                ..SearchBudget::default()
            }
        )
        .is_err());
        assert!(search_proof(
            &f,
            SearchBudget {
                max_depth: 0,
                ..SearchBudget::default()
            }
        )
        .is_err());
    }

    #[test]
    fn tiny_node_budget_is_reported() {
        let f = parse_formula("(a -> b) -> (c -> a) -> c -> b").unwrap();
        let out = search_proof(
            &f,
            SearchBudget {
                max_nodes: 3,
                ..SearchBudget::default()
            },
        )
        .unwrap();
        assert_eq!(out, SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn found_proofs_check_and_are_sound() {
        let models = all_structures();
        let sound: Vec<_> = models
            .iter()
            .filter(|m| !matches!(m.name(), "K1" | "K2"))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let small = SearchBudget {
            max_depth: 8,
            max_index: 4,
            max_nodes: 5_000,
        };
        let mut goals: Vec<Formula> = (0..150)
            .map(|_| random_formula(&mut rng, &["a", "b"], 3))
            .collect();
        goals.extend(
            list_corpus()
                .iter()
                .filter_map(|e| e.proof.goal.clone())
                .take(12),
        );
        for g in goals {
            if let SearchOutcome::Found(p) = search_proof(&g, small).unwrap() {
                assert!(check_proof(&p).valid, "{g}");
                for m in &sound {
                    assert!(
                        valid_in(m, &g, Exec::Sequential).unwrap().is_valid(),
                        "{g} in {}",
                        m.name()
                    );
                }
            }
        }
    }
}
