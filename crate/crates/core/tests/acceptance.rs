//! One line per acceptance criterion. A criterion whose literal wording
//! disagrees with the data prints FAIL for that sub-claim; the test still
//! asserts what the data actually shows, so a regression anywhere breaks it.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tarl::algebra::{
    chain_names, check_chain, get_chain, get_law, holds_identity, laws, translate,
    verified_in_algebra, FiniteAlgebra, IdentityOutcome, Mode,
};
use tarl::builtin::{all_structures, derived_demos, get_formula, get_structure, list_corpus};
use tarl::exec::Exec;
use tarl::formula::{parse_formula, random_formula, shared_variables, Formula};
use tarl::group::{build_atom_structure, check_sigma_homomorphism, partitions};
use tarl::kernel::derived::{apply_derived_rule, DerivedRule};
use tarl::kernel::{check_proof, permute_indices, substitute_proof, transposition, Proof};
use tarl::models::{
    check_postulates, find_invalidating_singletons, interpret, sharing_closure_checks, valid_in,
    variable_sharing_certificate, ModelStructure, Postulate, SharingCertificate, Validity,
    Valuation,
};

const CORPUS_LIMIT: Duration = Duration::from_secs(1);
const NAMED_FORMULA_LIMIT: Duration = Duration::from_secs(10);
const GROUP_LIMIT: Duration = Duration::from_secs(5);

fn line(n: usize, ok: bool, what: &str) {
    println!(
        "criterion {n:2} {} {what}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn structure(name: &str) -> ModelStructure {
    get_structure(name).unwrap()
}

fn val(m: &ModelStructure, pairs: &[(&str, &str)]) -> Valuation {
    pairs
        .iter()
        .map(|(p, s)| (p.to_string(), m.parse_set(s).unwrap()))
        .collect()
}

fn formula(name: &str) -> Formula {
    get_formula(name).unwrap().formula
}

fn complex(names: &[&str]) -> Vec<FiniteAlgebra> {
    names
        .iter()
        .map(|n| FiniteAlgebra::complex(structure(n)))
        .collect()
}

fn corpus_fidelity() {
    let start = Instant::now();
    let entries = list_corpus();
    let results: Vec<_> = entries
        .iter()
        .map(|e| (check_proof(&e.proof), &e.expected_objects))
        .collect();
    let elapsed = start.elapsed();
    let valid = results.iter().filter(|(r, _)| r.valid).count();
    let matching = results
        .iter()
        .filter(|(r, want)| &r.objects_used == *want)
        .count();
    assert_eq!((entries.len(), valid, matching), (38, 38, 38));
    let ok = elapsed < CORPUS_LIMIT;
    line(1, ok, &format!("corpus: {valid}/38 valid, {matching}/38 object sets exact, {elapsed:?} (< {CORPUS_LIMIT:?})"));
    assert!(ok);
}

/// True if every sequent of `sub` occurs in `proof`.
fn embeds(proof: &Proof, sub: &Proof) -> bool {
    let have: std::collections::HashSet<_> = proof.lines.iter().map(|l| &l.sequent).collect();
    sub.lines.iter().all(|l| have.contains(&l.sequent))
}

fn derived_rules() {
    let demos = derived_demos();
    let rules: BTreeSet<&str> = demos.iter().map(|d| d.rule.name()).collect();
    assert_eq!(rules.len(), DerivedRule::ALL.len());
    assert_eq!(rules.len(), 13);
    let mut permuted = Vec::new();
    for d in &demos {
        let p = apply_derived_rule(d.rule, &d.inputs, &d.params).unwrap();
        let r = check_proof(&p);
        assert!(r.valid, "{}: {:?}", d.rule.name(), r.first_error);
        if matches!(d.rule, DerivedRule::Contraposition | DerivedRule::ERule) {
            let input = &d.inputs[0];
            let swapped = permute_indices(input, &transposition(0, 1, input.bound)).unwrap();
            assert!(
                embeds(&p, &swapped),
                "{} lacks the (0 1)-permuted input",
                d.rule.name()
            );
            permuted.push(d.rule.name());
        }
    }
    line(
        2,
        true,
        &format!(
            "derived rules: 13/13 outputs check; (0 1)-permuted subproof inside {}",
            permuted.join(", ")
        ),
    );
}

fn kowalski_countermodel() {
    let (a, b, refl) = (
        formula("reflectionA"),
        formula("reflectionB"),
        formula("reflection"),
    );
    let k1 = structure("K1");
    let v1 = val(
        &k1,
        &[("p", "{a}"), ("q", "{a}"), ("r", "{b}"), ("s", "{a}")],
    );
    let k1_ja = interpret(&k1, &v1, &a).unwrap();
    let k1_jb = interpret(&k1, &v1, &b).unwrap();
    assert_eq!((k1_ja, k1_jb), (k1.parse_set("{b}").unwrap(), 0));
    assert!(!tarl::models::verified(&k1, &v1, &refl).unwrap());

    let k2 = structure("K2");
    let v2 = val(
        &k2,
        &[("p", "{b}"), ("q", "{b}"), ("r", "{b*}"), ("s", "{b*}")],
    );
    let k2_ja = interpret(&k2, &v2, &a).unwrap();
    let k2_jb = interpret(&k2, &v2, &b).unwrap();
    // {b} o {b} = {a,b,b*} meets J(r) = {b*} in {b*}, not {b}.
    assert_eq!(k2_ja, k2.parse_set("{b*}").unwrap());
    assert_eq!(k2_jb, 0);
    assert!(!tarl::models::verified(&k2, &v2, &refl).unwrap());
    let k2_literal = k2_ja == k2.parse_set("{b}").unwrap();

    for alg in complex(&["K3", "K4", "K5"]) {
        assert!(
            verified_in_algebra(&alg, &refl, Mode::Exhaustive, Exec::Parallel)
                .unwrap()
                .passed(),
            "{}",
            alg.name()
        );
    }
    for m in ["K3", "K4", "K5"] {
        assert!(valid_in(&structure(m), &refl, Exec::Parallel)
            .unwrap()
            .is_valid());
    }
    let lemma = list_corpus()
        .into_iter()
        .find(|e| e.id == "reflection")
        .unwrap()
        .proof;
    let rename = ["p", "q", "r", "s"].iter().zip(["a", "b", "c", "d"]);
    let map = rename
        .map(|(to, from)| (from.to_string(), Formula::var(to)))
        .collect();
    let instance = substitute_proof(&lemma, &map);
    let r = check_proof(&instance);
    assert!(r.valid && r.objects_used.len() == 3);
    assert_eq!(instance.conclusion().unwrap(), refl.desugar());

    line(
        3,
        true,
        "K1: J(A)={b}, J(B)={}, reflection instance invalid",
    );
    line(
        3,
        k2_literal,
        "K2: J(A)={b} as stated (computed {b*}: {a,b,b*} & {b*})",
    );
    line(3, true, "K2: J(B)={}, reflection instance invalid");
    line(
        3,
        true,
        "reflection valid in Cm(K3), Cm(K4), Cm(K5) exhaustively; 3-object proof checks",
    );
}

fn postulate_audits() {
    let reports: Vec<_> = all_structures().iter().map(check_postulates).collect();
    let basic_all = reports
        .iter()
        .all(|r| Postulate::BASIC.iter().all(|&p| r.holds(p)));
    for r in &reports {
        let k5 = r.structure == "K5";
        for p in Postulate::BASIC {
            let expected = !(k5 && matches!(p, Postulate::P3 | Postulate::P5));
            assert_eq!(r.holds(p), expected, "{} {}", r.structure, p.name());
        }
        for p in [
            Postulate::P3Prime,
            Postulate::P5Prime,
            Postulate::Normal,
            Postulate::CrStar,
        ] {
            assert!(r.holds(p), "{} {}", r.structure, p.name());
        }
        assert_eq!(r.holds(Postulate::Comm), !k5);
        assert_eq!(
            r.holds(Postulate::Peirce),
            !matches!(r.structure.as_str(), "K1" | "K2")
        );
    }
    let missing = |k: usize| -> BTreeSet<String> {
        reports[k]
            .peirce_missing
            .iter()
            .map(|t| t.join(","))
            .collect()
    };
    let want = |ts: &[&str]| -> BTreeSet<String> { ts.iter().map(|s| s.to_string()).collect() };
    assert_eq!(missing(0), want(&["b,a,a", "a,b,a", "a,a,b*"]));
    assert_eq!(missing(1), want(&["b*,b*,b"]));
    line(
        4,
        basic_all,
        "all five pass p1-p6 (K5 fails p3 and p5; it passes p1, p2, p4, p6, p3', p5')",
    );
    line(4, true, "comm fails only for K5; all normal and CR*");
    line(
        4,
        true,
        "peirce: K1 missing <b,a,a> <a,b,a> <a,a,b*>, K2 missing <b*,b*,b>, K3-K5 pass",
    );
}

fn gap_lists() {
    let k5 = structure("K5");
    type Witnesses<'a> = &'a [&'a [(&'a str, &'a str)]];
    let expected: [(&str, Witnesses); 4] = [
        (
            "contra",
            &[
                &[("p", "{a}"), ("q", "{b}")],
                &[("p", "{b}"), ("q", "{b*}")],
                &[("p", "{b*}"), ("q", "{a}")],
            ],
        ),
        (
            "perm",
            &[
                &[("p", "{a}"), ("q", "{b}"), ("r", "{a}")],
                &[("p", "{b*}"), ("q", "{a}"), ("r", "{a}")],
            ],
        ),
        (
            "suff",
            &[
                &[("p", "{0}"), ("q", "{a}"), ("r", "{a}")],
                &[("p", "{0}"), ("q", "{b}"), ("r", "{a}")],
                &[("p", "{b}"), ("q", "{a}"), ("r", "{a}")],
                &[("p", "{b}"), ("q", "{b}"), ("r", "{a}")],
            ],
        ),
        (
            "mp",
            &[&[("p", "{a}"), ("q", "{a}")], &[("p", "{b}"), ("q", "{a}")]],
        ),
    ];
    let mut counts = Vec::new();
    for (name, rows) in expected {
        let got: BTreeSet<Valuation> =
            find_invalidating_singletons(&k5, &formula(name), Exec::Parallel)
                .unwrap()
                .into_iter()
                .collect();
        let want: BTreeSet<Valuation> = rows.iter().map(|r| val(&k5, r)).collect();
        assert_eq!(got, want, "{name}");
        counts.push(format!("{name} {}", got.len()));
    }
    line(
        5,
        true,
        &format!("K5 singleton refutations exact: {}", counts.join(", ")),
    );
}

fn named_formulas() {
    let start = Instant::now();
    for m in ["K1", "K2", "K3"].map(structure) {
        for name in ["contra", "perm", "suff", "mp", "contr", "reduc"] {
            assert!(
                valid_in(&m, &formula(name), Exec::Parallel)
                    .unwrap()
                    .is_valid(),
                "{name} in {}",
                m.name()
            );
        }
        let ming = formula("ming");
        let Validity::Invalid { witness, .. } = valid_in(&m, &ming, Exec::Parallel).unwrap() else {
            panic!("ming valid in {}", m.name());
        };
        assert_eq!(witness, val(&m, &[("p", "{a}")]));
        assert_eq!(interpret(&m, &witness, &ming).unwrap(), 0);
    }
    let k5 = structure("K5");
    for name in ["contr", "reduc"] {
        assert!(valid_in(&k5, &formula(name), Exec::Parallel)
            .unwrap()
            .is_valid());
    }
    let elapsed = start.elapsed();
    let ok = elapsed < NAMED_FORMULA_LIMIT;
    line(6, ok, &format!("contra..reduc valid in K1-K3, ming refuted at J(p)={{a}} with value {{}}, contr/reduc valid in K5, {elapsed:?}"));
    assert!(ok);
}

fn variable_sharing() {
    let mut theorems = 0;
    for e in list_corpus() {
        if let Some((a, b)) = e
            .proof
            .conclusion()
            .as_ref()
            .and_then(|g| g.as_implication().map(|(a, b)| (a.clone(), b.clone())))
        {
            assert!(!shared_variables(&a, &b).is_empty(), "{}", e.id);
            theorems += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let a = random_formula(&mut rng, &["p", "q"], 3);
        let b = random_formula(&mut rng, &["r", "s"], 3);
        match variable_sharing_certificate(&a, &b).unwrap() {
            SharingCertificate::Semantic { implication, .. } => assert_eq!(implication, 0),
            SharingCertificate::Shared(_) => panic!("{a} and {b} share nothing"),
        }
    }
    let checks = sharing_closure_checks();
    assert!(checks.iter().all(|c| c.ok));
    line(7, true, &format!("{theorems} corpus implications share a variable; 200 disjoint pairs refuted in K4; {} closure checks pass", checks.len()));
}

fn group_construction() {
    let start = Instant::now();
    let k3 = structure("K3");
    let ps = partitions();
    for p in &ps {
        let m = build_atom_structure(p).unwrap();
        assert_eq!(
            m.composition_table(),
            k3.composition_table(),
            "partition {}",
            p.id
        );
        let audit = check_sigma_homomorphism(p);
        assert!(audit.passed(), "{:?}", audit.into_result());
    }
    let elapsed = start.elapsed();
    let ok = elapsed < GROUP_LIMIT;
    line(8, ok, &format!("{} partitions give K3's table; sigma homomorphism and A|A=B|B^=B^|B=GxG hold, {elapsed:?}", ps.len()));
    assert!(ok);
}

fn algebra_laws() {
    let ras = complex(&["K3", "K4", "K5"]);
    let refleq = get_law("refleq").unwrap();
    for alg in &ras {
        for law in laws() {
            let o = holds_identity(
                alg,
                &law.lhs,
                law.relation,
                &law.rhs,
                Mode::Exhaustive,
                Exec::Parallel,
            )
            .unwrap();
            assert!(o.passed(), "{} in {}", law.name, alg.name());
        }
        assert!(holds_identity(
            alg,
            &refleq.lhs,
            refleq.relation,
            &refleq.rhs,
            Mode::Exhaustive,
            Exec::Parallel
        )
        .unwrap()
        .passed());
    }
    for name in chain_names() {
        let r = check_chain(
            &ras,
            &get_chain(name).unwrap(),
            Mode::Exhaustive,
            Exec::Parallel,
        )
        .unwrap();
        assert!(r.passed(), "{name}: {:?}", r.failure());
    }
    for base in 2..=5 {
        let alg = FiniteAlgebra::proper(base).unwrap();
        for law in laws().into_iter().filter(|l| l.name.starts_with("ra")) {
            let mode = Mode::Random {
                trials: 1000,
                seed: base as u64,
            };
            let o = holds_identity(&alg, &law.lhs, law.relation, &law.rhs, mode, Exec::Parallel)
                .unwrap();
            assert!(o.passed(), "{} over {base} points", law.name);
        }
    }
    line(9, true, &format!("refleq and dra1-dra7 exhaustive in Cm(K3..K5); chains {} pass; ra1-ra10 x1000 over 2-5 points", chain_names().join(", ")));
}

fn soundness_bridge() {
    let ras = complex(&["K3", "K4", "K5"]);
    let goals: Vec<(String, Formula)> = list_corpus()
        .into_iter()
        .map(|e| (e.id.to_string(), e.proof.conclusion().unwrap()))
        .collect();
    for (id, g) in &goals {
        for alg in &ras {
            let o = verified_in_algebra(alg, g, Mode::Exhaustive, Exec::Parallel).unwrap();
            assert!(o.passed(), "{id} in {}", alg.name());
        }
        for base in 2..=5 {
            let alg = FiniteAlgebra::proper(base).unwrap();
            let o = verified_in_algebra(
                &alg,
                g,
                Mode::Random {
                    trials: 500,
                    seed: 7,
                },
                Exec::Parallel,
            )
            .unwrap();
            assert!(o.passed(), "{id} over {base} points");
        }
    }
    line(10, true, &format!("{} corpus theorems contain the identity in Cm(K3..K5) and in 500 samples over 2-5 points", goals.len()));
}

fn property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let vars = ["p", "q", "r", "s"];
    for _ in 0..10_000 {
        let f = random_formula(&mut rng, &vars, 5);
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }
    for m in all_structures() {
        let n = 1u64 << m.size();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(
                    m.op_implies(x, y),
                    m.op_neg(m.op_fusion(x, m.op_neg(y))),
                    "{}",
                    m.name()
                );
                for z in 0..n {
                    assert_eq!(m.op_fusion(x, y | z), m.op_fusion(x, y) | m.op_fusion(x, z));
                }
            }
        }
    }
    let mut mismatched = Vec::new();
    for m in all_structures() {
        let alg = FiniteAlgebra::complex(m.clone());
        let mut differ = 0;
        for _ in 0..1000 {
            let f = random_formula(&mut rng, &vars[..3], 4);
            let v: Valuation = f
                .variables()
                .into_iter()
                .map(|p| (p, rng.gen::<u64>() & m.full()))
                .collect();
            if interpret(&m, &v, &f).unwrap() != alg.eval(&v, &translate(&f)).unwrap() {
                differ += 1;
            }
        }
        if alg.is_relation_algebra() {
            assert_eq!(differ, 0, "{}", m.name());
        } else {
            mismatched.push(format!("{} {differ}", m.name()));
        }
    }
    line(
        11,
        true,
        &format!(
            "10000 parser round trips; residuation and fusion distribution on all built-ins; \
             interpret = eval.translate on Cm(K3..K5) for 1000 formulas (non-Peircean, not claimed: {})",
            mismatched.join(", ")
        ),
    );
}

#[test]
fn acceptance() {
    corpus_fidelity();
    derived_rules();
    kowalski_countermodel();
    postulate_audits();
    gap_lists();
    named_formulas();
    variable_sharing();
    group_construction();
    algebra_laws();
    soundness_bridge();
    property_suites();
}

#[test]
fn refleq_counterexample_in_k1() {
    let k1 = structure("K1");
    let alg = FiniteAlgebra::complex(k1.clone());
    let law = get_law("refleq").unwrap();
    let a = val(
        &k1,
        &[("x", "{a}"), ("y", "{a}"), ("z", "{b}"), ("w", "{a}")],
    );
    assert_eq!(
        alg.eval(&a, &law.lhs).unwrap(),
        k1.parse_set("{b}").unwrap()
    );
    assert_eq!(alg.eval(&a, &law.rhs).unwrap(), 0);
    let o = holds_identity(
        &alg,
        &law.lhs,
        law.relation,
        &law.rhs,
        Mode::Exhaustive,
        Exec::Parallel,
    )
    .unwrap();
    assert!(matches!(o, IdentityOutcome::Counterexample(_)));
}
