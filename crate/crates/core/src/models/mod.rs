//! Finite relevant model structures `<K, R, *, 0>` and the operations of
//! their complex algebras.
//!
//! Subsets of `K` are bitmasks over the element order. `R` is stored as a
//! triple set together with a derived fusion table, `fusion[x][y] = {z : Rxyz}`.

mod enumerate;
mod file;
mod postulates;
mod semantics;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use enumerate::{enumerate_structures, MAX_ENUMERATE_SIZE};
pub use file::{parse_model, print_model};
pub use postulates::{check_postulates, Postulate, PostulateOutcome, PostulateReport};
pub use semantics::{
    check_heredity, find_invalidating_singletons, interpret, sharing_closure_checks, valid_in,
    valid_in_capped, variable_sharing_certificate, verified, ClosureCheck, Interpreter,
    SharingCertificate, Validity, Valuation, DEFAULT_VALUATION_CAP,
};

pub type ElemSet = u64;

pub const MAX_ELEMENTS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("variable '{0}' has no assignment")]
    UnassignedVariable(String),
    #[error("{needed} valuations exceed the cap of {cap}")]
    TooManyValuations { needed: u128, cap: u64 },
    #[error("valuation for '{0}' is not hereditary")]
    NotHereditary(String),
    #[error("exhaustive enumeration of size {0} is unsupported without force")]
    Unsupported(usize),
    #[error("variable-sharing closure check failed: {0}")]
    ClosureViolation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelStructure {
    name: String,
    elements: Vec<String>,
    zero: usize,
    star: Vec<usize>,
    fusion: Vec<ElemSet>,
}

impl ModelStructure {
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        zero: usize,
        star: Vec<usize>,
        triples: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, ModelError> {
        let n = elements.len();
        if n == 0 || n > MAX_ELEMENTS {
            return Err(ModelError::Invalid(format!(
                "need 1..={MAX_ELEMENTS} elements, got {n}"
            )));
        }
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != n {
            return Err(ModelError::Invalid("duplicate element names".into()));
        }
        if zero >= n {
            return Err(ModelError::Invalid("zero is not an element".into()));
        }
        if star.len() != n || star.iter().any(|&s| s >= n) {
            return Err(ModelError::Invalid(
                "star must be a total map on the elements".into(),
            ));
        }
        let mut fusion = vec![0; n * n];
        for (a, b, c) in triples {
            if a >= n || b >= n || c >= n {
                return Err(ModelError::Invalid(format!(
                    "triple ({a},{b},{c}) out of range"
                )));
            }
            fusion[a * n + b] |= 1 << c;
        }
        Ok(ModelStructure {
            name: name.into(),
            elements,
            zero,
            star,
            fusion,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn star(&self, x: usize) -> usize {
        self.star[x]
    }

    pub fn full(&self) -> ElemSet {
        full_set(self.size())
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// `Rabc`.
    pub fn related(&self, a: usize, b: usize, c: usize) -> bool {
        self.fusion[a * self.size() + b] >> c & 1 == 1
    }

    /// `{c : Rabc}`, the fusion of two singletons.
    pub fn product(&self, a: usize, b: usize) -> ElemSet {
        self.fusion[a * self.size() + b]
    }

    /// Relation-algebra composition of atoms, `{x};{y} = {y} o {x}`.
    pub fn composition(&self, x: usize, y: usize) -> ElemSet {
        self.product(y, x)
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in members(self.product(a, b)) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    pub fn triple_count(&self) -> usize {
        self.fusion.iter().map(|s| s.count_ones() as usize).sum()
    }

    /// Fusion table, row `x` and column `y` holding `{x} o {y}`.
    pub fn fusion_table(&self) -> Vec<Vec<ElemSet>> {
        let n = self.size();
        (0..n)
            .map(|x| (0..n).map(|y| self.product(x, y)).collect())
            .collect()
    }

    /// Composition table of the atom structure, row `x` and column `y` holding `{x};{y}`.
    pub fn composition_table(&self) -> Vec<Vec<ElemSet>> {
        let n = self.size();
        (0..n)
            .map(|x| (0..n).map(|y| self.composition(x, y)).collect())
            .collect()
    }

    pub fn op_fusion(&self, x: ElemSet, y: ElemSet) -> ElemSet {
        let mut out = 0;
        for a in members(x) {
            for b in members(y) {
                out |= self.product(a, b);
            }
        }
        out
    }

    pub fn op_implies(&self, x: ElemSet, y: ElemSet) -> ElemSet {
        let mut out = 0;
        for z in 0..self.size() {
            if members(x).all(|a| self.product(z, a) & !y == 0) {
                out |= 1 << z;
            }
        }
        out
    }

    pub fn op_star(&self, x: ElemSet) -> ElemSet {
        members(x).fold(0, |acc, a| acc | 1 << self.star[a])
    }

    pub fn op_neg(&self, x: ElemSet) -> ElemSet {
        self.full() & !self.op_star(x)
    }

    /// True if `x` is closed upward along `R0ab`.
    pub fn is_hereditary(&self, x: ElemSet) -> bool {
        members(x).all(|a| self.product(self.zero, a) & !x == 0)
    }

    /// Hereditary subsets in increasing bitmask order.
    pub fn hereditary_sets(&self) -> Vec<ElemSet> {
        (0..=self.full())
            .filter(|&s| self.is_hereditary(s))
            .collect()
    }

    pub fn singleton(&self, name: &str) -> Option<ElemSet> {
        self.element_index(name).map(|i| 1 << i)
    }

    /// Parses `{0,a}` style set literals.
    pub fn parse_set(&self, text: &str) -> Option<ElemSet> {
        let inner = text.trim().strip_prefix('{')?.strip_suffix('}')?;
        let mut out = 0;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            out |= 1 << self.element_index(part)?;
        }
        Some(out)
    }

    pub fn format_set(&self, x: ElemSet) -> String {
        let names: Vec<&str> = members(x).map(|i| self.elements[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Display for ModelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_model(self))
    }
}

impl Serialize for ModelStructure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let names = |t: &(usize, usize, usize)| {
            [
                self.elements[t.0].clone(),
                self.elements[t.1].clone(),
                self.elements[t.2].clone(),
            ]
        };
        let mut st = s.serialize_struct("ModelStructure", 5)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("elements", &self.elements)?;
        st.serialize_field("zero", &self.elements[self.zero])?;
        let star: Vec<[&str; 2]> = (0..self.size())
            .map(|i| {
                [
                    self.elements[i].as_str(),
                    self.elements[self.star[i]].as_str(),
                ]
            })
            .collect();
        st.serialize_field("star", &star)?;
        let triples: Vec<[String; 3]> = self.triples().iter().map(names).collect();
        st.serialize_field("triples", &triples)?;
        st.end()
    }
}

pub fn full_set(n: usize) -> ElemSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of the members of `x`, ascending.
pub fn members(mut x: ElemSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{all_structures, get_structure};
    use proptest::prelude::*;

    fn set(m: &ModelStructure, s: &str) -> ElemSet {
        m.parse_set(s).unwrap()
    }

    #[test]
    fn table_cells() {
        let k1 = get_structure("K1").unwrap();
        assert_eq!(
            k1.op_fusion(set(&k1, "{a}"), set(&k1, "{a}")),
            set(&k1, "{0,a,b}")
        );
        let k2 = get_structure("K2").unwrap();
        assert_eq!(
            k2.op_fusion(set(&k2, "{b*}"), set(&k2, "{b*}")),
            set(&k2, "{a,b*}")
        );
        let k4 = get_structure("K4").unwrap();
        assert_eq!(
            k4.op_fusion(set(&k4, "{a}"), set(&k4, "{a*}")),
            set(&k4, "{0,a,a*}")
        );
        let k5 = get_structure("K5").unwrap();
        let b = k5.element_index("b").unwrap();
        let bs = k5.element_index("b*").unwrap();
        assert_eq!(k5.composition(b, bs), set(&k5, "{0,a,b,b*}"));
        assert_eq!(k5.op_fusion(1 << bs, 1 << b), set(&k5, "{0,a,b,b*}"));
    }

    #[test]
    fn triple_counts() {
        let counts: Vec<usize> = all_structures().iter().map(|m| m.triple_count()).collect();
        assert_eq!(counts, [34, 36, 37, 13, 26]);
    }

    #[test]
    fn implication_and_negation_values() {
        let k1 = get_structure("K1").unwrap();
        let a = set(&k1, "{a}");
        assert_eq!(k1.op_implies(a, a), set(&k1, "{0}"));
        assert_eq!(k1.op_neg(a), set(&k1, "{0,b,b*}"));
        let k2 = get_structure("K2").unwrap();
        assert_eq!(k2.op_neg(set(&k2, "{b*}")), set(&k2, "{0,a,b*}"));
        let k4 = get_structure("K4").unwrap();
        assert_eq!(k4.op_implies(set(&k4, "{a}"), set(&k4, "{a*}")), 0);
        assert_eq!(k4.op_implies(set(&k4, "{0,a}"), set(&k4, "{0,a*}")), 0);
        for m in all_structures() {
            assert_eq!(m.op_implies(m.full(), m.full()), m.full());
            assert_eq!(m.op_fusion(m.full(), 0), 0);
        }
    }

    #[test]
    fn residuation_and_distribution_everywhere() {
        for m in all_structures() {
            let full = m.full();
            for x in 0..=full {
                assert_eq!(m.op_neg(m.op_neg(x)), x);
                for y in 0..=full {
                    assert_eq!(
                        m.op_implies(x, y),
                        m.op_neg(m.op_fusion(x, m.op_neg(y))),
                        "{}",
                        m.name()
                    );
                    for z in [0, 1, full, y ^ x] {
                        assert_eq!(m.op_fusion(x, y | z), m.op_fusion(x, y) | m.op_fusion(x, z));
                        assert_eq!(m.op_fusion(y | z, x), m.op_fusion(y, x) | m.op_fusion(z, x));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_structures() {
        let els = vec!["0".to_string(), "a".to_string()];
        assert!(ModelStructure::new("x", els.clone(), 2, vec![0, 1], []).is_err());
        assert!(ModelStructure::new("x", els.clone(), 0, vec![0], []).is_err());
        assert!(ModelStructure::new("x", els, 0, vec![0, 1], [(0, 0, 5)]).is_err());
    }

    proptest! {
        #[test]
        fn fusion_is_monotone(k in 0usize..5, x in 0u64..16, y in 0u64..16, extra in 0u64..16) {
            let m = &all_structures()[k];
            let (x, y, extra) = (x & m.full(), y & m.full(), extra & m.full());
            let small = m.op_fusion(x, y);
            prop_assert_eq!(small & !m.op_fusion(x | extra, y), 0);
            prop_assert_eq!(small & !m.op_fusion(x, y | extra), 0);
        }
    }
}
