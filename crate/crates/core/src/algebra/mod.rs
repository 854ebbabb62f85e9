//! Relation-algebra terms, finite algebras to evaluate them in, and the
//! translation of relevance formulas into terms.
//!
//! Term syntax: `+` join, `.` meet, `;` relative product, prefix `-`
//! complement, postfix `^` converse, constants `id`, `0`, `1`. Precedence,
//! tightest first: `^`, `-`, `;`, `.`, `+`. Binary operators associate left.

mod finite;
mod laws;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

pub use finite::{
    holds_identity, verified_in_algebra, Assignment, Counterexample, Element, FiniteAlgebra,
    IdentityOutcome, Mode, DEFAULT_ASSIGNMENT_CAP, MAX_PROPER_BASE,
};
pub use laws::{
    chain_names, check_chain, get_chain, get_law, laws, parse_chain, ChainReport, ChainStep, Law,
    StepResult,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("term parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("chain line {line}: {message}")]
    ChainSyntax { line: usize, message: String },
    #[error("variable '{0}' has no assignment")]
    UnassignedVariable(String),
    #[error("{needed} assignments exceed the cap of {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("proper algebras need a base of 1..={MAX_PROPER_BASE} points, got {0}")]
    BadBase(usize),
    #[error("step {index} ({tag}) fails")]
    StepFailed {
        index: usize,
        tag: String,
        counterexample: Option<Counterexample>,
    },
    #[error("unknown name '{0}'")]
    UnknownName(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Equals,
    Leq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equals => "=",
            Relation::Leq => "<=",
        }
    }

    /// Relation between the ends of a chain of steps.
    pub fn then(self, next: Relation) -> Relation {
        if self == Relation::Equals && next == Relation::Equals {
            Relation::Equals
        } else {
            Relation::Leq
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RATerm {
    Var(String),
    Join(Box<RATerm>, Box<RATerm>),
    Meet(Box<RATerm>, Box<RATerm>),
    Complement(Box<RATerm>),
    Converse(Box<RATerm>),
    Product(Box<RATerm>, Box<RATerm>),
    Identity,
    Zero,
    One,
}

impl RATerm {
    pub fn var(name: &str) -> RATerm {
        RATerm::Var(name.to_string())
    }

    pub fn join(a: RATerm, b: RATerm) -> RATerm {
        RATerm::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: RATerm, b: RATerm) -> RATerm {
        RATerm::Meet(Box::new(a), Box::new(b))
    }

    pub fn complement(a: RATerm) -> RATerm {
        RATerm::Complement(Box::new(a))
    }

    pub fn converse(a: RATerm) -> RATerm {
        RATerm::Converse(Box::new(a))
    }

    pub fn product(a: RATerm, b: RATerm) -> RATerm {
        RATerm::Product(Box::new(a), Box::new(b))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            RATerm::Var(v) => {
                out.insert(v.clone());
            }
            RATerm::Join(a, b) | RATerm::Meet(a, b) | RATerm::Product(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            RATerm::Complement(a) | RATerm::Converse(a) => a.collect_vars(out),
            RATerm::Identity | RATerm::Zero | RATerm::One => {}
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            RATerm::Join(..) => 1,
            RATerm::Meet(..) => 2,
            RATerm::Product(..) => 3,
            RATerm::Complement(..) => 4,
            RATerm::Converse(..) => 5,
            _ => 6,
        }
    }
}

impl fmt::Display for RATerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, t: &RATerm, min: u8| {
            if t.precedence() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        };
        let binary = |f: &mut fmt::Formatter<'_>, a: &RATerm, op: &str, b: &RATerm, p: u8| {
            wrap(f, a, p)?;
            f.write_str(op)?;
            wrap(f, b, p + 1)
        };
        match self {
            RATerm::Var(v) => f.write_str(v),
            RATerm::Join(a, b) => binary(f, a, " + ", b, 1),
            RATerm::Meet(a, b) => binary(f, a, " . ", b, 2),
            RATerm::Product(a, b) => binary(f, a, ";", b, 3),
            RATerm::Complement(a) => {
                f.write_str("-")?;
                wrap(f, a, 4)
            }
            RATerm::Converse(a) => {
                wrap(f, a, 5)?;
                f.write_str("^")
            }
            RATerm::Identity => f.write_str("id"),
            RATerm::Zero => f.write_str("0"),
            RATerm::One => f.write_str("1"),
        }
    }
}

pub fn parse_term(text: &str) -> Result<RATerm, AlgebraError> {
    let mut p = TermParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.join()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn join(&mut self) -> Result<RATerm, AlgebraError> {
        let mut t = self.meet()?;
        while self.eat(b'+') {
            t = RATerm::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<RATerm, AlgebraError> {
        let mut t = self.product()?;
        while self.eat(b'.') {
            t = RATerm::meet(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<RATerm, AlgebraError> {
        let mut t = self.unary()?;
        while self.eat(b';') {
            t = RATerm::product(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<RATerm, AlgebraError> {
        if self.eat(b'-') {
            return Ok(RATerm::complement(self.unary()?));
        }
        let mut t = self.primary()?;
        while self.eat(b'^') {
            t = RATerm::converse(t);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<RATerm, AlgebraError> {
        self.skip_ws();
        if self.eat(b'(') {
            let t = self.join()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(t);
        }
        match self.src.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(RATerm::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(RATerm::One)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(if word == "id" {
                    RATerm::Identity
                } else {
                    RATerm::var(word)
                })
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Relevance formula to relation-algebra term. Fusion is relative
/// multiplication in the opposite order; implication is residuation
/// `-(A^;-B)`; negation is converse-complement.
pub fn translate(f: &Formula) -> RATerm {
    match f {
        Formula::Var(v) => RATerm::var(v),
        Formula::And(a, b) => RATerm::meet(translate(a), translate(b)),
        Formula::Or(a, b) => RATerm::join(translate(a), translate(b)),
        Formula::Fusion(a, b) => RATerm::product(translate(b), translate(a)),
        Formula::Implies(a, b) => RATerm::complement(RATerm::product(
            RATerm::converse(translate(a)),
            RATerm::complement(translate(b)),
        )),
        Formula::Not(a) => RATerm::converse(RATerm::complement(translate(a))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use proptest::prelude::*;

    fn t(s: &str) -> RATerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn precedence_and_printing() {
        assert_eq!(t("x;y . z"), RATerm::meet(t("x;y"), t("z")));
        assert_eq!(t("-x^"), RATerm::complement(RATerm::converse(t("x"))));
        assert_eq!(t("(-x)^").to_string(), "(-x)^");
        assert_eq!(
            t("x . -w^;y + x;(y . w;z)").to_string(),
            "x . -w^;y + x;(y . w;z)"
        );
        assert_eq!(t("x + (y + z)").to_string(), "x + (y + z)");
        assert_eq!(
            t("id;1 + 0"),
            RATerm::join(RATerm::product(RATerm::Identity, RATerm::One), RATerm::Zero)
        );
        assert!(parse_term("x +").is_err());
        assert!(parse_term("(x").is_err());
        assert!(parse_term("x y").is_err());
    }

    #[test]
    fn translation_shapes() {
        let f = |s: &str| parse_formula(s).unwrap();
        assert_eq!(translate(&f("p -> q")), t("-(p^;-q)"));
        assert_eq!(translate(&f("p o q")), t("q;p"));
        assert_eq!(translate(&f("~p")), t("(-p)^"));
    }

    fn arb_term() -> impl Strategy<Value = RATerm> {
        let leaf = prop_oneof![
            "[xyzw]".prop_map(|v| RATerm::var(&v)),
            Just(RATerm::Identity),
            Just(RATerm::Zero),
            Just(RATerm::One),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| RATerm::join(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| RATerm::meet(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| RATerm::product(a, b)),
                inner.clone().prop_map(RATerm::complement),
                inner.prop_map(RATerm::converse),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(term in arb_term()) {
            prop_assert_eq!(parse_term(&term.to_string()).unwrap(), term);
        }
    }
}
