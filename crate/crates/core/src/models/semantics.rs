//! Valuations, interpretation of formulas as subsets of `K`, and brute-force
//! validity and countermodel search.
//!
//! Valuations are enumerated with variables sorted by name, the first
//! variable most significant, and subsets ordered by bitmask. Reported
//! witnesses are therefore the least in that order whatever the executor.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{ElemSet, ModelError, ModelStructure};
use crate::builtin::get_structure;
use crate::exec::Exec;
use crate::formula::{shared_variables, Formula};

pub type Valuation = BTreeMap<String, ElemSet>;

pub const DEFAULT_VALUATION_CAP: u64 = 1 << 20;

enum Node {
    Var(usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Fusion(Box<Node>, Box<Node>),
}

/// A formula compiled against a structure, with variables numbered in name order.
pub struct Interpreter<'a> {
    model: &'a ModelStructure,
    variables: Vec<String>,
    root: Node,
}

impl<'a> Interpreter<'a> {
    pub fn new(model: &'a ModelStructure, formula: &Formula) -> Self {
        let variables: Vec<String> = formula.variables().into_iter().collect();
        let root = compile(formula, &variables);
        Interpreter {
            model,
            variables,
            root,
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// `values[k]` is the set assigned to `variables()[k]`.
    pub fn eval(&self, values: &[ElemSet]) -> ElemSet {
        self.eval_node(&self.root, values)
    }

    fn eval_node(&self, n: &Node, v: &[ElemSet]) -> ElemSet {
        let m = self.model;
        match n {
            Node::Var(k) => v[*k],
            Node::Not(a) => m.op_neg(self.eval_node(a, v)),
            Node::And(a, b) => self.eval_node(a, v) & self.eval_node(b, v),
            Node::Or(a, b) => self.eval_node(a, v) | self.eval_node(b, v),
            Node::Implies(a, b) => m.op_implies(self.eval_node(a, v), self.eval_node(b, v)),
            Node::Fusion(a, b) => m.op_fusion(self.eval_node(a, v), self.eval_node(b, v)),
        }
    }

    fn values_of(&self, v: &Valuation) -> Result<Vec<ElemSet>, ModelError> {
        self.variables
            .iter()
            .map(|name| {
                v.get(name)
                    .copied()
                    .ok_or_else(|| ModelError::UnassignedVariable(name.clone()))
            })
            .collect()
    }

    fn valuation(&self, values: &[ElemSet]) -> Valuation {
        self.variables
            .iter()
            .cloned()
            .zip(values.iter().copied())
            .collect()
    }
}

fn compile(f: &Formula, vars: &[String]) -> Node {
    let b = |x: &Formula| Box::new(compile(x, vars));
    match f {
        Formula::Var(name) => Node::Var(vars.binary_search(name).expect("variable collected")),
        Formula::Not(a) => Node::Not(b(a)),
        Formula::And(x, y) => Node::And(b(x), b(y)),
        Formula::Or(x, y) => Node::Or(b(x), b(y)),
        Formula::Implies(x, y) => Node::Implies(b(x), b(y)),
        Formula::Fusion(x, y) => Node::Fusion(b(x), b(y)),
    }
}

pub fn interpret(m: &ModelStructure, v: &Valuation, f: &Formula) -> Result<ElemSet, ModelError> {
    let it = Interpreter::new(m, f);
    let values = it.values_of(v)?;
    Ok(it.eval(&values))
}

/// True if the formula holds at the zero element.
pub fn verified(m: &ModelStructure, v: &Valuation, f: &Formula) -> Result<bool, ModelError> {
    Ok(interpret(m, v, f)? >> m.zero() & 1 == 1)
}

/// Rejects valuations that assign a set not closed upward along `R0ab`.
pub fn check_heredity(m: &ModelStructure, v: &Valuation) -> Result<(), ModelError> {
    match v.iter().find(|(_, &s)| !m.is_hereditary(s)) {
        Some((name, _)) => Err(ModelError::NotHereditary(name.clone())),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Validity {
    Valid {
        valuations: u64,
    },
    /// Least valuation on which the formula fails at zero.
    Invalid {
        witness: Valuation,
        value: ElemSet,
    },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid { .. })
    }
}

fn count(base: usize, vars: usize, cap: u64) -> Result<u64, ModelError> {
    let needed = (base as u128).checked_pow(vars as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(ModelError::TooManyValuations { needed, cap });
    }
    Ok(needed as u64)
}

/// Digits of `index` in base `choices.len()`, most significant first.
fn decode(index: u64, choices: &[ElemSet], vars: usize) -> Vec<ElemSet> {
    let base = choices.len() as u64;
    let mut out = vec![0; vars];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = choices[(rest % base) as usize];
        rest /= base;
    }
    out
}

pub fn valid_in(m: &ModelStructure, f: &Formula, exec: Exec) -> Result<Validity, ModelError> {
    valid_in_capped(m, f, exec, DEFAULT_VALUATION_CAP)
}

/// Checks the formula at zero on every hereditary valuation.
pub fn valid_in_capped(
    m: &ModelStructure,
    f: &Formula,
    exec: Exec,
    cap: u64,
) -> Result<Validity, ModelError> {
    let it = Interpreter::new(m, f);
    let vars = it.variables().len();
    let choices = m.hereditary_sets();
    let total = count(choices.len(), vars, cap)?;
    let zero = m.zero();
    let hit = exec.find_first(0..total, |i| {
        let values = decode(i, &choices, vars);
        let value = it.eval(&values);
        (value >> zero & 1 == 0).then_some((values, value))
    });
    Ok(match hit {
        Some((values, value)) => Validity::Invalid {
            witness: it.valuation(&values),
            value,
        },
        None => Validity::Valid { valuations: total },
    })
}

/// Every assignment of singletons to the variables under which the formula
/// denotes the empty set, in lexicographic order.
pub fn find_invalidating_singletons(
    m: &ModelStructure,
    f: &Formula,
    exec: Exec,
) -> Result<Vec<Valuation>, ModelError> {
    let it = Interpreter::new(m, f);
    let vars = it.variables().len();
    let choices: Vec<ElemSet> = (0..m.size()).map(|i| 1 << i).collect();
    let total = count(choices.len(), vars, DEFAULT_VALUATION_CAP)?;
    let hits = exec.filter_map(0..total, |i| {
        let values = decode(i, &choices, vars);
        (it.eval(&values) == 0).then_some(values)
    });
    Ok(hits.iter().map(|v| it.valuation(v)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SharingCertificate {
    Shared(BTreeSet<String>),
    /// A valuation in K4 under which the implication denotes the empty set.
    Semantic {
        valuation: Valuation,
        antecedent: ElemSet,
        consequent: ElemSet,
        implication: ElemSet,
    },
}

/// Either the variables two formulas share, or a K4 valuation refuting
/// `antecedent -> consequent`.
pub fn variable_sharing_certificate(
    antecedent: &Formula,
    consequent: &Formula,
) -> Result<SharingCertificate, ModelError> {
    let shared = shared_variables(antecedent, consequent);
    if !shared.is_empty() {
        return Ok(SharingCertificate::Shared(shared));
    }
    let k4 = get_structure("K4").expect("K4 is built in");
    let (zero, a, a_star) = k4_sets(&k4);
    let left_vars = antecedent.variables();
    let valuation: Valuation = left_vars
        .iter()
        .chain(consequent.variables().iter())
        .map(|p| (p.clone(), if left_vars.contains(p) { a } else { a_star }))
        .collect();
    let x = interpret(&k4, &valuation, antecedent)?;
    let y = interpret(&k4, &valuation, consequent)?;
    let imp = k4.op_implies(x, y);
    if x != a && x != zero | a {
        return Err(ModelError::ClosureViolation(format!(
            "antecedent denotes {}",
            k4.format_set(x)
        )));
    }
    if y != a_star && y != zero | a_star {
        return Err(ModelError::ClosureViolation(format!(
            "consequent denotes {}",
            k4.format_set(y)
        )));
    }
    if imp != 0 {
        return Err(ModelError::ClosureViolation(format!(
            "implication denotes {}",
            k4.format_set(imp)
        )));
    }
    Ok(SharingCertificate::Semantic {
        valuation,
        antecedent: x,
        consequent: y,
        implication: imp,
    })
}

fn k4_sets(k4: &ModelStructure) -> (ElemSet, ElemSet, ElemSet) {
    let s = |n| k4.singleton(n).expect("K4 element");
    (s("0"), s("a"), s("a*"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub op: &'static str,
    pub left: String,
    pub right: String,
    pub result: String,
    pub ok: bool,
}

/// The K4 facts behind the certificate: `{{a},{0,a}}` and `{{a*},{0,a*}}`
/// are each closed under `&`, `|`, `o`, `->` and `~`, and any implication
/// from the first family into the second is empty.
pub fn sharing_closure_checks() -> Vec<ClosureCheck> {
    let k4 = get_structure("K4").expect("K4 is built in");
    let (zero, a, a_star) = k4_sets(&k4);
    let pos = [a, zero | a];
    let neg = [a_star, zero | a_star];
    let mut out = Vec::new();
    let mut push = |op, x: ElemSet, y: ElemSet, r: ElemSet, ok| {
        out.push(ClosureCheck {
            op,
            left: k4.format_set(x),
            right: k4.format_set(y),
            result: k4.format_set(r),
            ok,
        });
    };
    for family in [pos, neg] {
        for &x in &family {
            for &y in &family {
                let ops = [
                    ("&", x & y),
                    ("|", x | y),
                    ("o", k4.op_fusion(x, y)),
                    ("->", k4.op_implies(x, y)),
                    ("~", k4.op_neg(x)),
                ];
                for (op, r) in ops {
                    push(op, x, y, r, family.contains(&r));
                }
            }
        }
    }
    for &x in &pos {
        for &y in &neg {
            let r = k4.op_implies(x, y);
            push("->", x, y, r, r == 0);
        }
    }
    out
}
