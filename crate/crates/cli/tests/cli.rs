use std::path::PathBuf;
use std::process::{Command, Output};

fn tarl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tarl"))
        .args(args)
        .env_remove("TARL_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tarl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn check_corpus_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/corpus/t6.prf");
    let o = tarl(&["check", path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid, objects {0}\n");
}

#[test]
fn broken_proof_exits_one() {
    let p = scratch("bad.prf", "lemma bad : a\n1. => (a)[0,0] ; axiom\n");
    let o = tarl(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn k5_refutes_contraposition() {
    let o = tarl(&["valid", "K5", "contra"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "invalid; witness p\u{21a6}{a}, q\u{21a6}{b}\n");
    let o = tarl(&["valid", "K5", "contr"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn corpus_summary() {
    let o = tarl(&["corpus"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("38/38 valid; objects columns match\n"));
}

#[test]
fn json_reports_parse() {
    let o = tarl(&["--json", "countermodel", "K5", "perm", "--singletons"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valuations"].as_array().unwrap().len(), 2);

    let o = tarl(&["--json", "check", "reflection"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["objects_used"], serde_json::json!([0, 1, 2]));
}

#[test]
fn jobs_do_not_change_output() {
    let args = [
        "algebra-test",
        "--base",
        "4",
        "--trials",
        "300",
        "--seed",
        "7",
        "all",
    ];
    let seq = tarl(&[&["--jobs", "1"], &args[..]].concat());
    let par = tarl(&[&["--jobs", "4"], &args[..]].concat());
    assert_eq!(seq.status.code(), Some(0));
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn chains_and_identities() {
    let o = tarl(&["chain", "K4", "dra2"]);
    assert_eq!(o.status.code(), Some(0));
    let p = scratch("broken.chain", "x;y = y;x ; BA\n");
    let o = tarl(&["chain", "K5", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let id = scratch("ids.txt", "# commutativity\nx;y = y;x\n");
    assert_eq!(
        tarl(&["algebra-test", id.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(tarl(&["algebra-test", "refleq"]).status.code(), Some(0));
}

#[test]
fn group_representation() {
    let o = tarl(&["grouprep", "--partition", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# composition table equals K3"));
    assert_eq!(
        tarl(&["grouprep", "--partition", "9"]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tarl(&["nonsense"]).status.code(), Some(2));
    assert_eq!(tarl(&["parse", "p ->"]).status.code(), Some(2));
    assert_eq!(tarl(&["valid", "K9", "contra"]).status.code(), Some(2));
}

#[test]
fn search_and_sharing() {
    let o = tarl(&["prove", "a -> a"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("impR"));
    assert_eq!(
        tarl(&["prove", "--depth", "8", "p -> p -> p"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(tarl(&["sharing", "p -> q", "q"]).status.code(), Some(0));
    assert_eq!(tarl(&["sharing", "p", "q"]).status.code(), Some(1));
}

#[test]
fn data_directory_override() {
    let dir = std::env::temp_dir().join(format!("tarl-data-{}", std::process::id()));
    std::fs::create_dir_all(dir.join("models")).unwrap();
    let k3 = include_str!("../../../data/models/K3.model").replace("model K3", "model K3-copy");
    std::fs::write(dir.join("models/K3.model"), k3).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_tarl"))
        .args(["postulates", "K3"])
        .env("TARL_DATA", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("K3-copy"), "{}", stdout(&o));
}
