use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jdom_core::graph::{parse_edge_list, Graph};
use serde_json::Value;
use tempfile::TempDir;

fn jdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jdom")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.lines().last().expect("some output")).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn graph_file(dir: &TempDir, name: &str, g: &Graph) -> PathBuf {
    write(dir, name, &g.to_edge_list())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_path_auto_uses_tree() {
    let dir = TempDir::new().unwrap();
    let p4 = graph_file(&dir, "p4.txt", &Graph::path(4));
    let out = jdom(&["solve", s(&p4), "--j", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["method"], "tree");
    assert_eq!(r["value"], 2);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn solve_complete_graph() {
    let dir = TempDir::new().unwrap();
    let k5 = graph_file(&dir, "k5.txt", &Graph::complete(5));
    for method in ["auto", "brute", "bnb", "split"] {
        let out = jdom(&["solve", s(&k5), "--j", "1", "--method", method]);
        assert_eq!(out.status.code(), Some(0), "{method}");
        assert_eq!(json(&out)["value"], 1);
    }
}

#[test]
fn solve_preconditions() {
    let dir = TempDir::new().unwrap();
    let c4 = graph_file(&dir, "c4.txt", &Graph::cycle(4));
    assert_eq!(jdom(&["solve", s(&c4), "--j", "2", "--method", "split"]).status.code(), Some(3));
    assert_eq!(jdom(&["solve", s(&c4), "--j", "2", "--method", "tree"]).status.code(), Some(3));
    assert_eq!(jdom(&["solve", s(&c4)]).status.code(), Some(3));
    let bad = write(&dir, "bad.txt", "3 1\n0 0\n");
    assert_eq!(jdom(&["solve", s(&bad), "--j", "1"]).status.code(), Some(2));
    let big = graph_file(&dir, "big.txt", &Graph::path(30).disjoint_union(&Graph::cycle(5)));
    assert_eq!(jdom(&["solve", s(&big), "--j", "1", "--method", "brute"]).status.code(), Some(4));
}

#[test]
fn solve_with_labels_and_partition() {
    let dir = TempDir::new().unwrap();
    let star = graph_file(&dir, "star.txt", &Graph::star(4));
    let labels = write(&dir, "labels.txt", "0 0 0\n1 1 1\n2 1 1\n3 1 1\n4 1 1\n");
    let out = jdom(&["solve", s(&star), "--labels", s(&labels)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], 1);

    let g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
    let gf = graph_file(&dir, "g.txt", &g);
    let part = write(&dir, "part.txt", "K: 0 1\nS: 2\n");
    let out = jdom(&["solve", s(&gf), "--j", "1", "--method", "split", "--partition", s(&part)]);
    let r = json(&out);
    assert_eq!(r["value"], 1);
    assert_eq!(r["witness"], serde_json::json!([0]));
}

#[test]
fn solve_budget() {
    let dir = TempDir::new().unwrap();
    let p = graph_file(&dir, "c6.txt", &Graph::cycle(6));
    let out = jdom(&["solve", s(&p), "--j", "2", "--method", "bnb", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["within_budget"], false);
    assert!(r["value"].is_null());
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let star = graph_file(&dir, "star.txt", &Graph::star(3));
    let all = write(&dir, "all.txt", "0 1 2 3\n");
    assert_eq!(jdom(&["verify", s(&star), s(&all), "--j", "2"]).status.code(), Some(0));
    let leaves = write(&dir, "leaves.txt", "1 2 3");
    let out = jdom(&["verify", s(&star), s(&leaves), "--j", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["overdominated"], serde_json::json!([0]));
    let junk = write(&dir, "junk.txt", "1 x");
    assert_eq!(jdom(&["verify", s(&star), s(&junk), "--j", "2"]).status.code(), Some(2));
}

#[test]
fn construct_infeasible_reports_threshold() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "k11.txt", &Graph::complete(11));
    let out = jdom(&["construct", s(&g), "--j", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("17.147"), "{err}");
}

#[test]
fn construct_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("reg.txt");
    let gen = jdom(&["gen", "--regular", "100", "12", "--seed", "4", "--out", s(&path)]);
    assert_eq!(gen.status.code(), Some(0));
    let args = ["construct", s(&path), "--j", "18", "--seed", "9", "--trials", "6"];
    let a = jdom(&args);
    let b = jdom(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = String::from_utf8(a.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[..6].iter().enumerate().all(|(i, l)| l["trial"] == i && l["valid"] == true));
    assert_eq!(lines[6]["summary"]["valid"], 6);

    let single = jdom(&["construct", s(&path), "--j", "18", "--seed", "9", "--witness"]);
    let r = json(&single);
    assert_eq!(r["terminated"], true);
    let set: Vec<String> = r["witness"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    let set_file = write(&dir, "set.txt", &set.join(" "));
    assert_eq!(jdom(&["verify", s(&path), s(&set_file), "--j", "18"]).status.code(), Some(0));
}

#[test]
fn gen_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    jdom(&["gen", "--tree", "10", "--seed", "7", "--out", s(&a)]);
    jdom(&["gen", "--tree", "10", "--seed", "7", "--out", s(&b)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(parse_edge_list(&fs::read(&a).unwrap()).unwrap().is_tree());

    let r = dir.path().join("r.txt");
    assert_eq!(jdom(&["gen", "--regular", "500", "12", "--seed", "1", "--out", s(&r)]).status.code(), Some(0));
    assert!(parse_edge_list(&fs::read(&r).unwrap()).unwrap().is_regular(12));

    let sp = dir.path().join("s.txt");
    let pp = dir.path().join("s.part");
    jdom(&["gen", "--split", "4", "5", "0.5", "--seed", "2", "--out", s(&sp), "--partition-out", s(&pp)]);
    let out = jdom(&["solve", s(&sp), "--j", "2", "--method", "split", "--partition", s(&pp)]);
    assert_eq!(out.status.code(), Some(0));

    let stdout = jdom(&["gen", "--path", "3"]);
    assert_eq!(String::from_utf8(stdout.stdout).unwrap(), "3 2\n0 1\n1 2\n");
    assert_eq!(jdom(&["gen", "--regular", "5", "3"]).status.code(), Some(3));
}

#[test]
fn reduce_single_triple() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "x.ex3c", "1 1\n1 2 3\n");
    let cover = write(&dir, "cover.txt", "1\n");
    let out_path = dir.path().join("red.txt");
    let out = jdom(&["reduce", "--ex3c", s(&inst), "--j", "2", "--out", s(&out_path), "--emit-witness", s(&cover)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["k"], 8);
    assert_eq!(r["n"], 28);
    let sidecar: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("red.txt.json")).unwrap()).unwrap();
    assert_eq!(sidecar["k"], 8);
    assert_eq!(sidecar["roles"][0]["role"], "claw_center");
    let w = dir.path().join("red.txt.witness");
    assert_eq!(jdom(&["verify", s(&out_path), s(&w), "--j", "2"]).status.code(), Some(0));
    assert_eq!(jdom(&["reduce", "--ex3c", s(&inst), "--j", "1", "--out", s(&out_path)]).status.code(), Some(3));
}
