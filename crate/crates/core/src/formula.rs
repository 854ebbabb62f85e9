//! Formulas over `~`, `&`, `|`, `->` and fusion `o`.
//!
//! Binding strength, tightest first: `~`, `o`, `&`, `|`, `->`.
//! `->` associates to the right, the other binary connectives to the left.
//! The Unicode forms `¬ ∧ ∨ → ∘` are accepted on input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Formula {
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Fusion(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn fusion(a: Formula, b: Formula) -> Formula {
        Formula::Fusion(Box::new(a), Box::new(b))
    }

    /// Rewrites every `A o B` as `~(A -> ~B)`.
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::Var(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.desugar()),
            Formula::And(a, b) => Formula::and(a.desugar(), b.desugar()),
            Formula::Or(a, b) => Formula::or(a.desugar(), b.desugar()),
            Formula::Implies(a, b) => Formula::implies(a.desugar(), b.desugar()),
            Formula::Fusion(a, b) => {
                Formula::not(Formula::implies(a.desugar(), Formula::not(b.desugar())))
            }
        }
    }

    pub fn contains_fusion(&self) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::Not(a) => a.contains_fusion(),
            Formula::Fusion(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.contains_fusion() || b.contains_fusion()
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Not(a) => a.collect_variables(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Fusion(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    /// Simultaneous substitution of formulas for variables.
    pub fn substitute(&self, map: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Not(a) => Formula::not(a.substitute(map)),
            Formula::And(a, b) => Formula::and(a.substitute(map), b.substitute(map)),
            Formula::Or(a, b) => Formula::or(a.substitute(map), b.substitute(map)),
            Formula::Implies(a, b) => Formula::implies(a.substitute(map), b.substitute(map)),
            Formula::Fusion(a, b) => Formula::fusion(a.substitute(map), b.substitute(map)),
        }
    }

    /// Number of connective and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Fusion(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Splits `A -> B` into its antecedent and consequent.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(a, b) => Some((a, b)),
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Fusion(..) => 4,
            Formula::Not(_) => 5,
            Formula::Var(_) => 6,
        }
    }

    /// Prints with `¬ ∧ ∨ → ∘` instead of the ASCII connectives.
    pub fn to_unicode(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, &UNICODE);
        s
    }

    fn write(&self, out: &mut String, sym: &Symbols) {
        let child = |f: &Formula, out: &mut String, paren: bool| {
            if paren {
                out.push('(');
                f.write(out, sym);
                out.push(')');
            } else {
                f.write(out, sym);
            }
        };
        match self {
            Formula::Var(v) => out.push_str(v),
            Formula::Not(a) => {
                out.push_str(sym.not);
                child(a, out, a.precedence() < 5);
            }
            Formula::Implies(a, b) => {
                child(a, out, a.precedence() <= 1);
                out.push_str(sym.implies);
                child(b, out, false);
            }
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Fusion(a, b) => {
                let p = self.precedence();
                let op = match self {
                    Formula::Or(..) => sym.or,
                    Formula::And(..) => sym.and,
                    _ => sym.fusion,
                };
                child(a, out, a.precedence() < p);
                out.push_str(op);
                child(b, out, b.precedence() <= p);
            }
        }
    }
}

struct Symbols {
    not: &'static str,
    and: &'static str,
    or: &'static str,
    implies: &'static str,
    fusion: &'static str,
}

const ASCII: Symbols = Symbols {
    not: "~",
    and: " & ",
    or: " | ",
    implies: " -> ",
    fusion: " o ",
};
const UNICODE: Symbols = Symbols {
    not: "¬",
    and: " ∧ ",
    or: " ∨ ",
    implies: " → ",
    fusion: " ∘ ",
};

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, &ASCII);
        f.write_str(&s)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    match p.peek() {
        None => Ok(f),
        Some((at, tok)) => Err(ParseError::new(
            *at,
            format!("unexpected {}", tok.describe()),
        )),
    }
}

/// Variables occurring in both formulas.
pub fn shared_variables(a: &Formula, b: &Formula) -> BTreeSet<String> {
    a.variables()
        .intersection(&b.variables())
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Fusion,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier '{s}'"),
            Token::Not => "'~'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Implies => "'->'".into(),
            Token::Fusion => "'o'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '~' | '¬' => Token::Not,
            '&' | '∧' => Token::And,
            '|' | '∨' => Token::Or,
            '→' => Token::Implies,
            '∘' => Token::Fusion,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {}
                    _ => return Err(ParseError::new(i, "expected '->'")),
                }
                Token::Implies
            }
            'a'..='z' => {
                let mut name = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((
                    i,
                    if name == "o" {
                        Token::Fusion
                    } else {
                        Token::Ident(name)
                    },
                ));
                continue;
            }
            _ => return Err(ParseError::new(i, format!("unexpected character '{c}'"))),
        };
        chars.next();
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if matches!(self.peek(), Some((_, t)) if t == tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Implies) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Token::Or) {
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.fusion()?;
        while self.eat(&Token::And) {
            lhs = Formula::and(lhs, self.fusion()?);
        }
        Ok(lhs)
    }

    fn fusion(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::Fusion) {
            lhs = Formula::fusion(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let Some((at, tok)) = self.peek().cloned() else {
            return Err(ParseError::new(self.end, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Not => Ok(Formula::not(self.unary()?)),
            Token::Ident(name) => Ok(Formula::Var(name)),
            Token::LParen => {
                let inner = self.implication()?;
                if self.eat(&Token::RParen) {
                    Ok(inner)
                } else {
                    let at = self.peek().map_or(self.end, |(i, _)| *i);
                    Err(ParseError::new(at, "expected ')'"))
                }
            }
            other => Err(ParseError::new(
                at,
                format!("unexpected {}", other.describe()),
            )),
        }
    }
}

/// Random formula over `vars` with at most `depth` nested connectives.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return Formula::var(vars[rng.gen_range(0..vars.len())]);
    }
    let sub = |rng: &mut R| random_formula(rng, vars, depth - 1);
    match rng.gen_range(0..5) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::fusion(sub(rng), sub(rng)),
    }
}
