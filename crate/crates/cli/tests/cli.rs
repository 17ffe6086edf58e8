use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn fullinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fullinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str], file: &str) -> Output {
    let path = data(file);
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    fullinv(&all)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_prints_invariants_and_table() {
    let o = run(&["analyze"], "example.json");
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for needle in [
        "order     64",
        "ulm       [0, 1, 0, 1]",
        "13 admissible",
        "Ind. Decomp",
        "⟨pa⟩⊕⟨p³b⟩",
    ] {
        assert!(s.contains(needle), "missing {needle:?} in\n{s}");
    }
}

#[test]
fn analyze_json_is_valid() {
    let o = run(&["--json", "analyze"], "example.json");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["table"].as_array().unwrap().len(), 13);
    assert_eq!(v["lattice"]["nodes"], 9);
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(code(&run(&["analyze"], "malformed.json")), 2);
    assert_eq!(code(&run(&["analyze"], "not_prime.json")), 2);
    assert_eq!(code(&run(&["analyze"], "no_such_file.json")), 2);
    assert_eq!(
        code(&run(&["lattice", "--format", "svg"], "example.json")),
        2
    );
    assert_eq!(
        code(&run(&["verify", "--claims", "lemma-99"], "z4.json")),
        2
    );
}

#[test]
fn budget_overflow_exits_3() {
    assert_eq!(
        code(&run(&["--max-group", "8", "analyze"], "example.json")),
        3
    );
    assert_eq!(
        code(&run(
            &["--max-ideals", "4", "verify", "--claims", "prop-8.6"],
            "z2_z4.json"
        )),
        3
    );
}

#[test]
fn verify_z4_exits_0() {
    let o = run(&["verify"], "z4.json");
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("0 unexpected"));
}

#[test]
fn verify_example_reports_known_discrepancies_with_witnesses() {
    let o = run(&["--json", "verify"], "example.json");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    for id in ["section-7.2.sum", "remark-8.3", "lemma-7.5.1"] {
        let r = reports.iter().find(|r| r["claim_id"] == id).unwrap();
        assert_eq!(r["status"], "refuted", "{id}");
        assert_eq!(r["known_discrepancy"], true);
        assert!(!r["witnesses"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_filter_selects_one_claim() {
    let o = run(
        &["--json", "verify", "--claims", "lemma-8.9"],
        "example.json",
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["claim_id"], "lemma-8.9");
}

#[test]
fn verify_is_byte_stable() {
    let a = run(&["verify"], "example.json");
    let b = run(&["verify"], "example.json");
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["--json", "verify"], "z2_z4.json");
    let b = run(&["--json", "verify"], "z2_z4.json");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lattice_dot_matches_golden_file() {
    let o = run(&["lattice", "--format", "dot"], "example.json");
    assert_eq!(code(&o), 0);
    let golden = std::fs::read_to_string(data("example.dot")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn lattice_json_lists_nodes_and_edges() {
    let o = run(&["lattice", "--format", "json"], "z2_z4.json");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn endo_reports_ring_and_ideals() {
    let o = run(&["--json", "endo"], "z2_z4.json");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ring_order"], 32);
    assert_eq!(v["ideal_count"], 8);
    assert!(v["collision"].is_object());
}

#[test]
fn matrix_marks_homocyclic_columns() {
    let o = run(&["matrix"], "example.json");
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("j=0*") && s.contains("j=1*") && s.contains("j=2 "));
    assert!(s.contains("⟨a⟩⊕⟨pb⟩"));
}

#[test]
fn ulm_verdicts_and_exit_codes() {
    let o = run(&["--json", "ulm"], "ulm_reject.json");
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["status"], "refuted");
    assert_eq!(
        v[0]["witnesses"][0]["data"]["kappa"],
        serde_json::json!({"q": 0, "r": 0})
    );

    assert_eq!(code(&run(&["ulm"], "ulm_accept.json")), 0);
    assert_eq!(code(&run(&["ulm", "--basic"], "basic_accept.json")), 0);
    assert_eq!(code(&run(&["ulm"], "basic_accept.json")), 2);
}
