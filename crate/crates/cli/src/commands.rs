use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use tarl::algebra::{
    check_chain, get_chain, get_law, holds_identity, laws, parse_chain, parse_term, translate,
    ChainStep, FiniteAlgebra, IdentityOutcome, Mode, RATerm, Relation,
};
use tarl::builtin::{corpus_entry, get_structure, list_corpus};
use tarl::exec::Exec;
use tarl::formula::Formula;
use tarl::group::{build_atom_structure, check_sigma_homomorphism, partition};
use tarl::kernel::check_proof;
use tarl::kernel::script::{parse_script, print_script};
use tarl::models::{
    check_postulates, find_invalidating_singletons, print_model, sharing_closure_checks, valid_in,
    variable_sharing_certificate, Postulate, SharingCertificate, Validity,
};
use tarl::search::{search_proof, SearchBudget, SearchOutcome};

use crate::resolve::{self, format_valuation, set_json, valuation_json};
use crate::{CliError, Command, Report};

fn ok(text: String, json: Value) -> Result<Report, CliError> {
    Ok(Report {
        text,
        json,
        refuted: false,
    })
}

fn refuted(text: String, json: Value) -> Result<Report, CliError> {
    Ok(Report {
        text,
        json,
        refuted: true,
    })
}

fn objects(set: &BTreeSet<u8>) -> String {
    let parts: Vec<String> = set.iter().map(u8::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn run(cmd: &Command, exec: Exec) -> Result<Report, CliError> {
    match cmd {
        Command::Parse { formula } => parse(formula),
        Command::Check { proof } => check(proof),
        Command::Prove {
            formula,
            max_index,
            depth,
            nodes,
        } => prove(
            formula,
            SearchBudget {
                max_depth: *depth,
                max_index: *max_index,
                max_nodes: *nodes,
            },
        ),
        Command::Valid { model, formula } => valid(model, formula, exec),
        Command::Countermodel {
            model,
            formula,
            singletons,
        } => countermodel(model, formula, *singletons, exec),
        Command::Postulates { model } => postulates(model),
        Command::Corpus { filter } => corpus(filter.as_deref()),
        Command::Translate { formula } => {
            let f = resolve::formula(formula)?;
            let t = translate(&f);
            ok(
                format!("{t}\n"),
                json!({ "formula": f.to_string(), "term": t.to_string() }),
            )
        }
        Command::AlgebraTest {
            identity,
            base,
            trials,
            seed,
        } => algebra_test(identity, *base, *trials, *seed, exec),
        Command::Chain {
            algebra,
            chain,
            trials,
            seed,
        } => chain_cmd(algebra, chain, *trials, *seed, exec),
        Command::Grouprep { partition } => grouprep(*partition),
        Command::Sharing {
            antecedent,
            consequent,
        } => sharing(antecedent, consequent),
    }
}

fn parse(arg: &str) -> Result<Report, CliError> {
    let f = resolve::formula(arg)?;
    let vars: Vec<String> = f.variables().into_iter().collect();
    let desugared = f.desugar();
    let mut text = format!("{f}\n");
    if desugared != f {
        let _ = writeln!(text, "desugared: {desugared}");
    }
    let _ = writeln!(text, "variables: {}", vars.join(", "));
    ok(
        text,
        json!({ "formula": f.to_string(), "desugared": desugared.to_string(), "variables": vars, "size": f.size() }),
    )
}

fn check(arg: &str) -> Result<Report, CliError> {
    let proof = resolve::proof(arg)?;
    let r = check_proof(&proof);
    let json = serde_json::to_value(&r).expect("report serializes");
    if r.valid {
        ok(
            format!("valid, objects {}\n", objects(&r.objects_used)),
            json,
        )
    } else {
        let e = r
            .first_error
            .as_ref()
            .map(|e| e.to_string())
            .unwrap_or_else(|| "no conclusion".into());
        refuted(format!("invalid: {e}\n"), json)
    }
}

fn prove(arg: &str, budget: SearchBudget) -> Result<Report, CliError> {
    let f = resolve::formula(arg)?;
    match search_proof(&f, budget).map_err(CliError::input)? {
        SearchOutcome::Found(p) => {
            let script = print_script(&p);
            let objs = objects(&p.objects_used());
            ok(
                script.clone(),
                json!({ "outcome": "found", "objects": p.objects_used(), "script": script, "lines": p.lines.len(), "summary": objs }),
            )
        }
        SearchOutcome::NotFound => refuted(
            "no proof within the bounds\n".into(),
            json!({ "outcome": "not_found" }),
        ),
        SearchOutcome::BudgetExhausted => refuted(
            "node budget exhausted\n".into(),
            json!({ "outcome": "budget_exhausted" }),
        ),
    }
}

fn valid(model: &str, arg: &str, exec: Exec) -> Result<Report, CliError> {
    let m = resolve::model(model)?;
    let f = resolve::formula(arg)?;
    match valid_in(&m, &f, exec).map_err(CliError::input)? {
        Validity::Valid { valuations } => ok(
            format!("valid in {} ({valuations} valuations)\n", m.name()),
            json!({ "structure": m.name(), "formula": f.to_string(), "valid": true, "valuations": valuations }),
        ),
        Validity::Invalid { witness, value } => {
            // Prefer a singleton witness when one exists: it is the easiest to read.
            let singles = find_invalidating_singletons(&m, &f, exec).map_err(CliError::input)?;
            let (shown, shown_value) = match singles.first() {
                Some(v) => (v.clone(), 0),
                None => (witness, value),
            };
            refuted(
                format!("invalid; witness {}\n", format_valuation(&m, &shown)),
                json!({
                    "structure": m.name(),
                    "formula": f.to_string(),
                    "valid": false,
                    "witness": valuation_json(&m, &shown),
                    "value": set_json(&m, shown_value),
                }),
            )
        }
    }
}

fn countermodel(model: &str, arg: &str, singletons: bool, exec: Exec) -> Result<Report, CliError> {
    let m = resolve::model(model)?;
    let f = resolve::formula(arg)?;
    if singletons {
        let vs = find_invalidating_singletons(&m, &f, exec).map_err(CliError::input)?;
        let mut text = String::new();
        for v in &vs {
            let _ = writeln!(text, "{}", format_valuation(&m, v));
        }
        let _ = writeln!(text, "{} singleton valuation(s) with empty value", vs.len());
        let json = json!({
            "structure": m.name(),
            "formula": f.to_string(),
            "valuations": vs.iter().map(|v| valuation_json(&m, v)).collect::<Vec<_>>(),
        });
        return if vs.is_empty() {
            ok(text, json)
        } else {
            refuted(text, json)
        };
    }
    match valid_in(&m, &f, exec).map_err(CliError::input)? {
        Validity::Valid { valuations } => ok(
            format!(
                "no countermodel in {} ({valuations} valuations)\n",
                m.name()
            ),
            json!({ "structure": m.name(), "formula": f.to_string(), "countermodel": Value::Null }),
        ),
        Validity::Invalid { witness, value } => refuted(
            format!(
                "{}\nvalue {}\n",
                format_valuation(&m, &witness),
                m.format_set(value)
            ),
            json!({
                "structure": m.name(),
                "formula": f.to_string(),
                "countermodel": valuation_json(&m, &witness),
                "value": set_json(&m, value),
            }),
        ),
    }
}

fn postulates(model: &str) -> Result<Report, CliError> {
    let m = resolve::model(model)?;
    let r = check_postulates(&m);
    let mut text = format!("{} ({} triples)\n", m.name(), m.triple_count());
    for o in &r.outcomes {
        let w = o
            .witness
            .as_ref()
            .map(|w| format!("  witness ({})", w.join(", ")))
            .unwrap_or_default();
        let _ = writeln!(
            text,
            "{:8} {}{w}",
            o.postulate.name(),
            if o.holds { "pass" } else { "FAIL" }
        );
    }
    if !r.peirce_missing.is_empty() {
        let t: Vec<String> = r
            .peirce_missing
            .iter()
            .map(|t| format!("<{}>", t.join(",")))
            .collect();
        let _ = writeln!(text, "missing for peirce: {}", t.join(" "));
    }
    let json = serde_json::to_value(&r).expect("report serializes");
    // Failing one of p1..p6 means this is not a relevant model structure.
    if Postulate::BASIC.iter().all(|&p| r.holds(p)) {
        ok(text, json)
    } else {
        refuted(text, json)
    }
}

fn corpus(filter: Option<&str>) -> Result<Report, CliError> {
    let entries = match filter {
        Some(id) => vec![corpus_entry(id).map_err(CliError::input)?],
        None => list_corpus(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let (mut valid, mut matching) = (0, 0);
    for e in &entries {
        let script = resolve::corpus_text(e.id)?.expect("listed entries have scripts");
        let proof =
            parse_script(&script).map_err(|err| CliError::Input(format!("{}: {err}", e.id)))?;
        let r = check_proof(&proof);
        let matches = r.objects_used == e.expected_objects;
        valid += usize::from(r.valid);
        matching += usize::from(matches);
        let _ = writeln!(
            text,
            "{:12} {:7} objects {}{}",
            e.id,
            if r.valid { "valid" } else { "INVALID" },
            objects(&r.objects_used),
            if matches {
                String::new()
            } else {
                format!(" (expected {})", objects(&e.expected_objects))
            }
        );
        rows.push(json!({ "id": e.id, "valid": r.valid, "objects": r.objects_used, "expected": e.expected_objects }));
    }
    let n = entries.len();
    let all = valid == n && matching == n;
    let _ = writeln!(
        text,
        "{valid}/{n} valid; {}",
        if matching == n {
            "objects columns match".to_string()
        } else {
            format!("{} object mismatches", n - matching)
        }
    );
    let json =
        json!({ "entries": rows, "valid": valid, "total": n, "objects_match": matching == n });
    if all {
        ok(text, json)
    } else {
        refuted(text, json)
    }
}

/// `lhs rel rhs` statements, one per line, `#` comments allowed.
fn parse_identities(text: &str) -> Result<Vec<(String, RATerm, Relation, RATerm)>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: String| CliError::Input(format!("identity line {}: {m}", n + 1));
        let (l, rel, r) = if let Some((l, r)) = line.split_once("<=") {
            (l, Relation::Leq, r)
        } else if let Some((l, r)) = line.split_once('=') {
            (l, Relation::Equals, r)
        } else {
            return Err(bad("expected '=' or '<='".into()));
        };
        let lhs = parse_term(l.trim()).map_err(|e| bad(e.to_string()))?;
        let rhs = parse_term(r.trim()).map_err(|e| bad(e.to_string()))?;
        out.push((format!("line {}", n + 1), lhs, rel, rhs));
    }
    Ok(out)
}

fn identities(arg: &str) -> Result<Vec<(String, RATerm, Relation, RATerm)>, CliError> {
    if Path::new(arg).is_file() {
        return parse_identities(&resolve::read(Path::new(arg))?);
    }
    if arg == "all" {
        return Ok(laws()
            .into_iter()
            .map(|l| (l.name.to_string(), l.lhs, l.relation, l.rhs))
            .collect());
    }
    let law = get_law(arg).map_err(CliError::input)?;
    Ok(vec![(law.name.to_string(), law.lhs, law.relation, law.rhs)])
}

fn outcome_json(alg: &FiniteAlgebra, o: &IdentityOutcome) -> Value {
    match o {
        IdentityOutcome::Pass { assignments } => {
            json!({ "pass": true, "assignments": assignments })
        }
        IdentityOutcome::Counterexample(c) => json!({
            "pass": false,
            "assignment": c.assignment.iter().map(|(k, &v)| (k.clone(), Value::String(alg.format(v)))).collect::<serde_json::Map<_, _>>(),
            "lhs": alg.format(c.lhs),
            "rhs": alg.format(c.rhs),
        }),
    }
}

fn outcome_text(alg: &FiniteAlgebra, o: &IdentityOutcome) -> String {
    match o {
        IdentityOutcome::Pass { assignments } => format!("pass ({assignments} assignments)"),
        IdentityOutcome::Counterexample(c) => {
            let a: Vec<String> = c
                .assignment
                .iter()
                .map(|(k, &v)| format!("{k}\u{21a6}{}", alg.format(v)))
                .collect();
            format!(
                "counterexample {}: lhs {} rhs {}",
                a.join(", "),
                alg.format(c.lhs),
                alg.format(c.rhs)
            )
        }
    }
}

fn algebra_test(
    arg: &str,
    base: Option<usize>,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<Report, CliError> {
    let ids = identities(arg)?;
    let (algebras, mode) = match base {
        Some(n) => (
            vec![FiniteAlgebra::proper(n).map_err(CliError::input)?],
            Mode::Random { trials, seed },
        ),
        None => {
            let ms = ["K3", "K4", "K5"]
                .map(|k| FiniteAlgebra::complex(get_structure(k).expect("built in")));
            (ms.to_vec(), Mode::Exhaustive)
        }
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = false;
    for (name, lhs, rel, rhs) in &ids {
        for alg in &algebras {
            let o = holds_identity(alg, lhs, *rel, rhs, mode, exec).map_err(CliError::input)?;
            failed |= !o.passed();
            let _ = writeln!(text, "{name:8} {:8} {}", alg.name(), outcome_text(alg, &o));
            rows.push(json!({
                "identity": name,
                "statement": format!("{lhs} {} {rhs}", rel.symbol()),
                "algebra": alg.name(),
                "outcome": outcome_json(alg, &o),
            }));
        }
    }
    let json = json!({ "mode": mode, "results": rows });
    if failed {
        refuted(text, json)
    } else {
        ok(text, json)
    }
}

fn chain_cmd(
    algebra: &str,
    arg: &str,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<Report, CliError> {
    let alg = resolve::algebra(algebra)?;
    let steps: Vec<ChainStep> = if Path::new(arg).is_file() {
        parse_chain(&resolve::read(Path::new(arg))?).map_err(CliError::input)?
    } else {
        get_chain(arg).map_err(CliError::input)?
    };
    let mode = match alg {
        FiniteAlgebra::Proper { .. } => Mode::Random { trials, seed },
        FiniteAlgebra::Complex(_) => Mode::Exhaustive,
    };
    let report =
        check_chain(std::slice::from_ref(&alg), &steps, mode, exec).map_err(CliError::input)?;
    let mut text = String::new();
    for (s, r) in steps.iter().zip(&report.steps) {
        let _ = writeln!(
            text,
            "{:2}. {} {} {}  [{}]  {}",
            r.index,
            s.lhs,
            s.relation.symbol(),
            s.rhs,
            s.tag,
            outcome_text(&alg, &r.outcome)
        );
    }
    let end = &report.end_to_end[0];
    let _ = writeln!(
        text,
        "chain: {} {} {}  {}",
        steps[0].lhs,
        report.relation.symbol(),
        steps[steps.len() - 1].rhs,
        outcome_text(&alg, &end.outcome)
    );
    let json = json!({
        "algebra": alg.name(),
        "relation": report.relation,
        "steps": report.steps.iter().map(|r| json!({ "index": r.index, "tag": r.tag, "outcome": outcome_json(&alg, &r.outcome) })).collect::<Vec<_>>(),
        "end_to_end": outcome_json(&alg, &end.outcome),
        "passed": report.passed(),
    });
    if report.passed() {
        ok(text, json)
    } else {
        refuted(text, json)
    }
}

fn grouprep(id: usize) -> Result<Report, CliError> {
    let p = partition(id).map_err(CliError::input)?;
    let m = build_atom_structure(&p).map_err(CliError::input)?;
    let k3 = get_structure("K3").expect("built in");
    let same = m.composition_table() == k3.composition_table();
    let audit = check_sigma_homomorphism(&p);
    let mut text = print_model(&m);
    let _ = writeln!(
        text,
        "# composition table {} K3",
        if same { "equals" } else { "DIFFERS FROM" }
    );
    for c in &audit.checks {
        let w = c
            .witness
            .as_ref()
            .map(|w| format!(" at {w}"))
            .unwrap_or_default();
        let _ = writeln!(
            text,
            "# sigma {}: {}{w}",
            c.name,
            if c.passed { "pass" } else { "FAIL" }
        );
    }
    let json =
        json!({ "partition": id, "model": print_model(&m), "equals_k3": same, "sigma": audit });
    if same && audit.passed() {
        ok(text, json)
    } else {
        refuted(text, json)
    }
}

fn sharing(a: &str, b: &str) -> Result<Report, CliError> {
    let (fa, fb): (Formula, Formula) = (resolve::formula(a)?, resolve::formula(b)?);
    let cert = variable_sharing_certificate(&fa, &fb).map_err(CliError::input)?;
    let k4 = get_structure("K4").expect("built in");
    match cert {
        SharingCertificate::Shared(vars) => {
            let v: Vec<String> = vars.into_iter().collect();
            ok(
                format!("shared variables: {}\n", v.join(", ")),
                json!({ "shared": v }),
            )
        }
        SharingCertificate::Semantic {
            valuation,
            antecedent,
            consequent,
            implication,
        } => {
            let checks = sharing_closure_checks();
            let closed = checks.iter().all(|c| c.ok);
            let text = format!(
                "no shared variables; in K4 under {}\n  antecedent {}  consequent {}  implication {}\n  closure checks: {}/{} pass\n",
                format_valuation(&k4, &valuation),
                k4.format_set(antecedent),
                k4.format_set(consequent),
                k4.format_set(implication),
                checks.iter().filter(|c| c.ok).count(),
                checks.len()
            );
            let json = json!({
                "shared": Vec::<String>::new(),
                "valuation": valuation_json(&k4, &valuation),
                "antecedent": set_json(&k4, antecedent),
                "consequent": set_json(&k4, consequent),
                "implication": set_json(&k4, implication),
                "closure_checks": checks,
            });
            // The implication is not a theorem: it fails in K4.
            if closed {
                refuted(text, json)
            } else {
                Err(CliError::Input("K4 closure checks failed".into()))
            }
        }
    }
}
