//! Embedded data: the proof corpus, named formulas and the five model structures.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{parse_formula, Formula};
use crate::kernel::derived::{apply_derived_rule, DerivedRule};
use crate::kernel::script::parse_script;
use crate::kernel::{substitute_proof, Proof};
use crate::models::{parse_model, ModelStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuiltinError {
    #[error("unknown structure '{0}' (expected K1..K5)")]
    UnknownStructure(String),
    #[error("unknown name '{0}'")]
    UnknownName(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFormula {
    pub name: &'static str,
    pub formula: Formula,
    pub description: &'static str,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub proof: Proof,
    pub expected_objects: BTreeSet<u8>,
}

struct CorpusFile {
    id: &'static str,
    text: &'static str,
    /// The proof uses exactly objects `0..objects`.
    objects: u8,
}

const CORPUS: &[CorpusFile] = &[
    CorpusFile {
        id: "t6",
        text: include_str!("../../../data/corpus/t6.prf"),
        objects: 1,
    },
    CorpusFile {
        id: "A1",
        text: include_str!("../../../data/corpus/A1.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "A2",
        text: include_str!("../../../data/corpus/A2.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "A3",
        text: include_str!("../../../data/corpus/A3.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "A5",
        text: include_str!("../../../data/corpus/A5.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "A6",
        text: include_str!("../../../data/corpus/A6.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "comm1",
        text: include_str!("../../../data/corpus/comm1.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "comm2",
        text: include_str!("../../../data/corpus/comm2.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "assoc1",
        text: include_str!("../../../data/corpus/assoc1.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "assoc2",
        text: include_str!("../../../data/corpus/assoc2.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "A8",
        text: include_str!("../../../data/corpus/A8.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "T9",
        text: include_str!("../../../data/corpus/T9.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "T10",
        text: include_str!("../../../data/corpus/T10.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "A9",
        text: include_str!("../../../data/corpus/A9.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "t3",
        text: include_str!("../../../data/corpus/t3.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "T2",
        text: include_str!("../../../data/corpus/T2.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "t4",
        text: include_str!("../../../data/corpus/t4.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "t5",
        text: include_str!("../../../data/corpus/t5.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "t5a",
        text: include_str!("../../../data/corpus/t5a.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "T11",
        text: include_str!("../../../data/corpus/T11.prf"),
        objects: 2,
    },
    CorpusFile {
        id: "A4",
        text: include_str!("../../../data/corpus/A4.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "A7",
        text: include_str!("../../../data/corpus/A7.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "t11",
        text: include_str!("../../../data/corpus/t11.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "T6",
        text: include_str!("../../../data/corpus/T6.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "T8",
        text: include_str!("../../../data/corpus/T8.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "t7",
        text: include_str!("../../../data/corpus/t7.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "t9",
        text: include_str!("../../../data/corpus/t9.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "t13",
        text: include_str!("../../../data/corpus/t13.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "t14",
        text: include_str!("../../../data/corpus/t14.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "T12",
        text: include_str!("../../../data/corpus/T12.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "T15",
        text: include_str!("../../../data/corpus/T15.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "reflection",
        text: include_str!("../../../data/corpus/reflection.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "fusiondist",
        text: include_str!("../../../data/corpus/fusiondist.prf"),
        objects: 3,
    },
    CorpusFile {
        id: "prefixingA",
        text: include_str!("../../../data/corpus/prefixingA.prf"),
        objects: 4,
    },
    CorpusFile {
        id: "t10",
        text: include_str!("../../../data/corpus/t10.prf"),
        objects: 4,
    },
    CorpusFile {
        id: "T19",
        text: include_str!("../../../data/corpus/T19.prf"),
        objects: 4,
    },
    CorpusFile {
        id: "fusionmono",
        text: include_str!("../../../data/corpus/fusionmono.prf"),
        objects: 4,
    },
    CorpusFile {
        id: "assocfusion",
        text: include_str!("../../../data/corpus/assocfusion.prf"),
        objects: 4,
    },
];

pub fn corpus_ids() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|c| c.id)
}

pub fn corpus_script(id: &str) -> Result<&'static str, BuiltinError> {
    CORPUS
        .iter()
        .find(|c| c.id == id)
        .map(|c| c.text)
        .ok_or_else(|| BuiltinError::UnknownName(id.to_string()))
}

fn entry(c: &CorpusFile) -> CorpusEntry {
    let proof =
        parse_script(c.text).unwrap_or_else(|e| panic!("embedded corpus file {}: {e}", c.id));
    CorpusEntry {
        id: c.id,
        proof,
        expected_objects: (0..c.objects).collect(),
    }
}

pub fn list_corpus() -> Vec<CorpusEntry> {
    CORPUS.iter().map(entry).collect()
}

pub fn corpus_entry(id: &str) -> Result<CorpusEntry, BuiltinError> {
    CORPUS
        .iter()
        .find(|c| c.id == id)
        .map(entry)
        .ok_or_else(|| BuiltinError::UnknownName(id.to_string()))
}

/// Inputs for one application of a derived rule.
#[derive(Clone, Debug)]
pub struct DerivedDemo {
    pub rule: DerivedRule,
    pub inputs: Vec<Proof>,
    pub params: Vec<Formula>,
}

fn instance(id: &str, pairs: &[(&str, &str)]) -> Proof {
    let map = pairs
        .iter()
        .map(|(v, t)| {
            (
                v.to_string(),
                parse_formula(t).expect("demo formula parses").desugar(),
            )
        })
        .collect();
    substitute_proof(&corpus_entry(id).expect("demo lemma").proof, &map)
}

/// One application of every derived rule to corpus lemmas or their instances.
pub fn derived_demos() -> Vec<DerivedDemo> {
    let lemma = |id: &str| instance(id, &[]);
    let formula = |t: &str| parse_formula(t).expect("demo formula parses");
    let not_not_identity = apply_derived_rule(
        DerivedRule::ModusPonens,
        &[instance("t3", &[("a", "a -> a")]), lemma("A1")],
        &[],
    )
    .expect("demo input");
    let demo = |rule, inputs, params| DerivedDemo {
        rule,
        inputs,
        params,
    };
    vec![
        demo(
            DerivedRule::Adjunction,
            vec![lemma("t6"), lemma("A1")],
            vec![],
        ),
        demo(
            DerivedRule::ModusPonens,
            vec![instance("t3", &[("a", "a | ~a")]), lemma("t6")],
            vec![],
        ),
        demo(
            DerivedRule::DisjunctiveSyllogism,
            vec![instance("t6", &[("a", "~(a -> a)")]), not_not_identity],
            vec![],
        ),
        demo(
            DerivedRule::Transitivity,
            vec![lemma("t3"), lemma("A9")],
            vec![],
        ),
        demo(DerivedRule::Contraposition, vec![lemma("A2")], vec![]),
        demo(DerivedRule::Contraposition2, vec![lemma("t3")], vec![]),
        demo(
            DerivedRule::Cut,
            vec![lemma("A3"), instance("A5", &[("a", "b"), ("b", "a")])],
            vec![],
        ),
        demo(DerivedRule::ERule, vec![lemma("A1")], vec![formula("b")]),
        demo(
            DerivedRule::Suffixing,
            vec![lemma("A2")],
            vec![formula("c")],
        ),
        demo(DerivedRule::Cycling, vec![lemma("prefixingA")], vec![]),
        demo(
            DerivedRule::PrefixingR,
            vec![lemma("A2")],
            vec![formula("c")],
        ),
        demo(
            DerivedRule::Affixing,
            vec![lemma("A2"), lemma("A5")],
            vec![],
        ),
        demo(
            DerivedRule::MonotonicFusion,
            vec![lemma("A2"), lemma("A3")],
            vec![],
        ),
    ]
}

const FORMULAS: &[(&str, &str, &str)] = &[
    ("contra", "(p -> ~q) -> (q -> ~p)", "contraposition"),
    ("perm", "(p -> (q -> r)) -> (q -> (p -> r))", "permutation"),
    ("suff", "(p -> q) -> ((q -> r) -> (p -> r))", "suffixing"),
    ("mp", "p -> ((p -> q) -> q)", "modus ponens"),
    ("contr", "(p -> (p -> q)) -> (p -> q)", "contraction"),
    ("reduc", "(p -> ~p) -> ~p", "reductio"),
    ("ming", "p -> (p -> p)", "mingle"),
    ("reflectionA", "(p o q) & r", "antecedent of the reflection instance"),
    ("reflectionB", "((p & ~s) o q) | (p o (q & (s o r)))", "consequent of the reflection instance"),
    (
        "reflection",
        "(p o q) & r -> ((p & ~s) o q) | (p o (q & (s o r)))",
        "valid for all binary relations, not a theorem of R",
    ),
    (
        "l5",
        "(((a34 o a23) & a24) o ((a12 o a01) & a02)) & a04 \
         -> ((((a34 o a23) & a24) o ((a12 o (a01 & ~a01)) & a02)) & a04) \
         | ((((a34 & ~a34) o a23) & a24) o ((a12 o a01) & a02)) & a04 \
         | a34 o ((a23 o a12) & (((a23 o a02) & (a43 o a04)) o a10) & (a43 o ((a04 o a10) & (a24 o a12)))) o a01",
        "needs five objects",
    ),
];

pub fn formula_names() -> impl Iterator<Item = &'static str> {
    FORMULAS.iter().map(|f| f.0)
}

pub fn get_formula(name: &str) -> Result<NamedFormula, BuiltinError> {
    let &(name, text, description) = FORMULAS
        .iter()
        .find(|f| f.0 == name)
        .ok_or_else(|| BuiltinError::UnknownName(name.to_string()))?;
    let formula = parse_formula(text).expect("embedded formula parses");
    Ok(NamedFormula {
        name,
        formula,
        description,
    })
}

pub fn list_formulas() -> Vec<NamedFormula> {
    formula_names().map(|n| get_formula(n).unwrap()).collect()
}

const STRUCTURES: &[(&str, &str)] = &[
    ("K1", include_str!("../../../data/models/K1.model")),
    ("K2", include_str!("../../../data/models/K2.model")),
    ("K3", include_str!("../../../data/models/K3.model")),
    ("K4", include_str!("../../../data/models/K4.model")),
    ("K5", include_str!("../../../data/models/K5.model")),
];

pub fn structure_names() -> impl Iterator<Item = &'static str> {
    STRUCTURES.iter().map(|s| s.0)
}

pub fn get_structure(name: &str) -> Result<ModelStructure, BuiltinError> {
    let (_, text) = STRUCTURES
        .iter()
        .find(|s| s.0.eq_ignore_ascii_case(name))
        .ok_or_else(|| BuiltinError::UnknownStructure(name.to_string()))?;
    Ok(parse_model(text).expect("embedded model parses"))
}

pub fn all_structures() -> Vec<ModelStructure> {
    structure_names()
        .map(|n| get_structure(n).unwrap())
        .collect()
}
