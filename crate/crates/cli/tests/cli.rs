use std::process::{Command, Output};

fn btquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btquot")).args(args).env_remove("BTQUOT_Q").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn quotient_graph_json() {
    let o = btquot(&["quotient-graph", "--ideal", "T^4+T^2+1", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["betti"], 2);
    assert_eq!(v["q"], 2);
}

#[test]
fn dot_output_is_a_graph() {
    let o = btquot(&["quotient-graph", "--ideal", "T^3+T+1", "--dot"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("graph") || s.starts_with("digraph"), "{s}");
    assert!(s.trim_end().ends_with('}'));
}

#[test]
fn hecke_matrix_csv() {
    let o = btquot(&["hecke-matrix", "--level", "T^3+T+1", "--prime", "T", "--csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-1,2\n1,-1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(btquot(&["hecke-matrix", "--level", "T^3+T+1", "--prime", "T^3+T+1"]).status.code(), Some(3));
    assert_eq!(btquot(&["quotient-graph", "--ideal", "T^+"]).status.code(), Some(2));
    assert_eq!(btquot(&["torsion", "--g", "1", "--delta", "0"]).status.code(), Some(3));
    assert_eq!(btquot(&["--q", "6", "quotient-graph", "--ideal", "T"]).status.code(), Some(3));
    let o = btquot(&["reduction-type", "--g", "1", "--delta", "1", "--prime", "T"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Ordinary");
}

#[test]
fn torsion_and_newton() {
    let o = btquot(&["torsion", "--g", "0", "--delta", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("structure A/("));
    let o = btquot(&["newton", "--g", "0", "--delta", "1", "--prime", "T"]);
    assert_eq!(stdout(&o), "1/3 3\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["modular-symbol", "--level", "T^4+T^3+1", "--a", "0", "--b", "1/T"];
    let first = stdout(&btquot(&args));
    assert!(!first.is_empty());
    for _ in 0..3 {
        assert_eq!(stdout(&btquot(&args)), first);
    }
}

#[test]
fn verify_suite_passes() {
    let o = btquot(&["verify", "--suite", "paper"]);
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS")).count(), 11, "{s}");
    assert_eq!(o.status.code(), Some(0));
}
