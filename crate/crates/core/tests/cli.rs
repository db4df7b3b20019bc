use std::io::Write as _;
use std::process::{Command, Output};

use tempfile::{NamedTempFile, TempDir};

fn bctree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bctree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tree_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path_file(n: usize) -> NamedTempFile {
    let text: String = (1..n).map(|i| format!("{} {}\n", i - 1, i)).collect();
    tree_file(&text)
}

fn run_on(file: &NamedTempFile, args: &[&str]) -> Output {
    let path = file.path().to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--input", path]);
    bctree(&full)
}

#[test]
fn construct_star() {
    let o = bctree(&["construct", "--order", "7", "--leaves", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "p 7\n0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n");
}

#[test]
fn construct_refusals() {
    let o = bctree(&["construct", "--order", "8", "--leaves", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("infeasible: excluded_two_leaves_even_order"));

    let o = bctree(&["construct", "--order", "5", "--leaves", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("infeasible: excluded_p_minus_2"));
}

#[test]
fn construct_trace_and_json() {
    let o = bctree(&["construct", "--order", "9", "--leaves", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
    let o = bctree(&["construct", "--order", "9", "--leaves", "4", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn count_path() {
    let f = path_file(5);
    let o = run_on(&f, &["count", "--metric", "bc"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bc: 4"));

    let o = run_on(&f, &["count", "--metric", "bc", "--per-vertex"]);
    assert!(stdout(&o).contains("bc per vertex: 2 3 4 3 2"));
}

#[test]
fn count_star() {
    let f = tree_file("0 1\n0 2\n0 3\n0 4\n");
    let o = run_on(&f, &["count", "--metric", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("subtrees: 20"));
    assert!(out.contains("bc: 11"));
    assert!(out.contains("leaf-bc: 11"));
}

#[test]
fn count_json_keys_are_sorted() {
    let f = tree_file("0 1\n0 2\n0 3\n0 4\n");
    let o = run_on(&f, &["count", "--json", "--per-vertex"]);
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["subtrees"], 20);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let first = text.find("\"bc\"").unwrap();
    let last = text.find("\"subtrees\"").unwrap();
    assert!(first < last);
}

#[test]
fn count_respects_cap() {
    let f = path_file(30);
    let o = run_on(&f, &["count"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn core_on_paths_and_stars() {
    let o = run_on(&path_file(7), &["core", "--metric", "bc"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("bc_subtree_core: {2, 3, 4}"));
    assert!(out.contains("value: 7"));

    let star = tree_file("0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n");
    let o = run_on(&star, &["core", "--metric", "bc"]);
    assert!(stdout(&o).contains("bc_subtree_core: {0}"));

    let o = run_on(&path_file(3), &["core", "--metric", "compare"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("subtree_core subset of bc_subtree_core: true"));

    let o = run_on(&path_file(2), &["core", "--metric", "bc"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn core_reports_input_labels() {
    let f = tree_file("p 3\n10 20\n20 30\n");
    let o = run_on(&f, &["core", "--metric", "subtree"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("subtree_core: {20}"));
}

#[test]
fn enumerate_trees() {
    let o = bctree(&["enumerate-trees", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("p 4").count(), 2);

    let o = bctree(&["enumerate-trees", "--order", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("p 1").count(), 1);

    let o = bctree(&["enumerate-trees", "--order", "30"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(bctree(&["bogus"]).status.code(), Some(64));
    assert_eq!(bctree(&["construct", "--order", "x"]).status.code(), Some(64));
    assert_eq!(bctree(&["--help"]).status.code(), Some(0));

    let o = run_on(&tree_file("0 1\n1 2\n2 0\n"), &["count"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = bctree(&["count", "--input", "/nonexistent/tree.txt"]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn verify_command() {
    let o = bctree(&["verify", "--max-order", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = bctree(&["verify", "--max-order", "13"]);
    assert_eq!(o.status.code(), Some(3));
    let o = bctree(&["verify", "--max-order", "6", "--suite", "formulas", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn output_is_deterministic() {
    let f = tree_file("0 1\n1 2\n1 3\n3 4\n3 5\n5 6\n");
    for args in [
        vec!["count", "--per-vertex", "--json"],
        vec!["core", "--metric", "compare", "--json"],
    ] {
        let a = run_on(&f, &args);
        let b = run_on(&f, &args);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = bctree(&["enumerate-trees", "--order", "8"]);
    let b = bctree(&["enumerate-trees", "--order", "8"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dot_output_is_written() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("t.dot");
    let o = bctree(&["construct", "--order", "6", "--leaves", "3", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph T {"));
    assert_eq!(text.matches(" -- ").count(), 5);
}
