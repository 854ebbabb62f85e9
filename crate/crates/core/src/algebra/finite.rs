//! Finite algebras of binary relations (proper) and of atom subsets (complex).
//!
//! Elements are bitmasks: pairs `(i, j)` of a proper algebra over `n` points
//! sit at bit `i * n + j`; a complex algebra uses the element order of its
//! atom structure.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{translate, AlgebraError, RATerm, Relation};
use crate::exec::Exec;
use crate::formula::Formula;
use crate::models::{full_set, members, ModelStructure, Postulate};

pub type Element = u64;
pub type Assignment = BTreeMap<String, Element>;

/// `6 * 6` pairs still fit in a bitmask.
pub const MAX_PROPER_BASE: usize = 6;

pub const DEFAULT_ASSIGNMENT_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteAlgebra {
    /// All binary relations on `0..base`.
    Proper { base: usize },
    /// All subsets of the atoms of a structure.
    Complex(ModelStructure),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Exhaustive,
    /// `trials` assignments drawn from a counter-based generator: trial `t`
    /// uses stream `t` of the seed, so results do not depend on scheduling.
    Random {
        trials: u64,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Assignment,
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IdentityOutcome {
    Pass { assignments: u64 },
    Counterexample(Counterexample),
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, IdentityOutcome::Pass { .. })
    }
}

impl FiniteAlgebra {
    pub fn proper(base: usize) -> Result<FiniteAlgebra, AlgebraError> {
        if base == 0 || base > MAX_PROPER_BASE {
            return Err(AlgebraError::BadBase(base));
        }
        Ok(FiniteAlgebra::Proper { base })
    }

    pub fn complex(m: ModelStructure) -> FiniteAlgebra {
        FiniteAlgebra::Complex(m)
    }

    pub fn name(&self) -> String {
        match self {
            FiniteAlgebra::Proper { base } => format!("Re({base})"),
            FiniteAlgebra::Complex(m) => format!("Cm({})", m.name()),
        }
    }

    /// Complex algebras are relation algebras only over Peircean atom
    /// structures; elsewhere the term operations still evaluate but the
    /// translation no longer tracks the relevance connectives.
    pub fn is_relation_algebra(&self) -> bool {
        match self {
            FiniteAlgebra::Proper { .. } => true,
            FiniteAlgebra::Complex(m) => Postulate::Peirce.first_failure(m).is_none(),
        }
    }

    /// Number of bits an element occupies.
    pub fn width(&self) -> usize {
        match self {
            FiniteAlgebra::Proper { base } => base * base,
            FiniteAlgebra::Complex(m) => m.size(),
        }
    }

    pub fn top(&self) -> Element {
        full_set(self.width())
    }

    pub fn identity(&self) -> Element {
        match self {
            FiniteAlgebra::Proper { base } => {
                (0..*base).fold(0, |acc, i| acc | 1 << (i * base + i))
            }
            FiniteAlgebra::Complex(m) => 1 << m.zero(),
        }
    }

    pub fn complement(&self, x: Element) -> Element {
        self.top() & !x
    }

    pub fn converse(&self, x: Element) -> Element {
        match self {
            FiniteAlgebra::Proper { base } => {
                let n = *base;
                members(x).fold(0, |acc, b| acc | 1 << ((b % n) * n + b / n))
            }
            FiniteAlgebra::Complex(m) => m.op_star(x),
        }
    }

    pub fn product(&self, x: Element, y: Element) -> Element {
        match self {
            FiniteAlgebra::Proper { base } => {
                let n = *base;
                let row = full_set(n);
                let mut out = 0;
                for p in members(x) {
                    let (i, k) = (p / n, p % n);
                    // Row k of y, shifted to row i.
                    out |= (y >> (k * n) & row) << (i * n);
                }
                out
            }
            // x;y is fusion the other way round.
            FiniteAlgebra::Complex(m) => m.op_fusion(y, x),
        }
    }

    pub fn eval(&self, assignment: &Assignment, t: &RATerm) -> Result<Element, AlgebraError> {
        Ok(match t {
            RATerm::Var(v) => {
                *assignment
                    .get(v)
                    .ok_or_else(|| AlgebraError::UnassignedVariable(v.clone()))?
                    & self.top()
            }
            RATerm::Join(a, b) => self.eval(assignment, a)? | self.eval(assignment, b)?,
            RATerm::Meet(a, b) => self.eval(assignment, a)? & self.eval(assignment, b)?,
            RATerm::Complement(a) => self.complement(self.eval(assignment, a)?),
            RATerm::Converse(a) => self.converse(self.eval(assignment, a)?),
            RATerm::Product(a, b) => {
                self.product(self.eval(assignment, a)?, self.eval(assignment, b)?)
            }
            RATerm::Identity => self.identity(),
            RATerm::Zero => 0,
            RATerm::One => self.top(),
        })
    }

    pub fn format(&self, x: Element) -> String {
        match self {
            FiniteAlgebra::Proper { base } => {
                let mut s = String::from("{");
                for (k, b) in members(x).enumerate() {
                    if k > 0 {
                        s.push(',');
                    }
                    let _ = write!(s, "({},{})", b / base, b % base);
                }
                s.push('}');
                s
            }
            FiniteAlgebra::Complex(m) => m.format_set(x),
        }
    }

    fn random_element(&self, rng: &mut ChaCha8Rng) -> Element {
        rng.gen::<u64>() & self.top()
    }
}

fn relation_holds(lhs: Element, rel: Relation, rhs: Element) -> bool {
    match rel {
        Relation::Equals => lhs == rhs,
        Relation::Leq => lhs & !rhs == 0,
    }
}

/// Checks `lhs rel rhs` under every assignment (exhaustive) or under sampled ones.
pub fn holds_identity(
    alg: &FiniteAlgebra,
    lhs: &RATerm,
    rel: Relation,
    rhs: &RATerm,
    mode: Mode,
    exec: Exec,
) -> Result<IdentityOutcome, AlgebraError> {
    let mut vars = lhs.variables();
    vars.extend(rhs.variables());
    let vars: Vec<String> = vars.into_iter().collect();
    let width = alg.width();
    let make = |values: &[Element]| -> Assignment {
        vars.iter().cloned().zip(values.iter().copied()).collect()
    };
    let test = |values: Vec<Element>| -> Option<Counterexample> {
        let a = make(&values);
        let l = alg.eval(&a, lhs).expect("all variables assigned");
        let r = alg.eval(&a, rhs).expect("all variables assigned");
        (!relation_holds(l, rel, r)).then_some(Counterexample {
            assignment: a,
            lhs: l,
            rhs: r,
        })
    };
    let (total, hit) = match mode {
        Mode::Exhaustive => {
            let bits = width * vars.len();
            let needed = if bits >= 127 {
                u128::MAX
            } else {
                1u128 << bits
            };
            if needed > DEFAULT_ASSIGNMENT_CAP as u128 {
                return Err(AlgebraError::CapExceeded {
                    needed,
                    cap: DEFAULT_ASSIGNMENT_CAP,
                });
            }
            let total = needed as u64;
            let mask = alg.top();
            let hit = exec.find_first(0..total, |i| {
                // First variable in the most significant digit.
                let values: Vec<Element> = (0..vars.len())
                    .map(|k| i >> (width * (vars.len() - 1 - k)) & mask)
                    .collect();
                test(values)
            });
            (total, hit)
        }
        Mode::Random { trials, seed } => {
            let hit = exec.find_first(0..trials, |t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t);
                let values: Vec<Element> =
                    vars.iter().map(|_| alg.random_element(&mut rng)).collect();
                test(values)
            });
            (trials, hit)
        }
    };
    Ok(match hit {
        Some(c) => IdentityOutcome::Counterexample(c),
        None => IdentityOutcome::Pass { assignments: total },
    })
}

/// True if the identity element lies below the formula's translation
/// under every assignment the mode visits.
pub fn verified_in_algebra(
    alg: &FiniteAlgebra,
    f: &Formula,
    mode: Mode,
    exec: Exec,
) -> Result<IdentityOutcome, AlgebraError> {
    holds_identity(
        alg,
        &RATerm::Identity,
        Relation::Leq,
        &translate(f),
        mode,
        exec,
    )
}
