use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_inforest"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C4: &str = "4 4\n0 1\n1 2\n2 3\n3 0\n";

fn gen_file(dir: &TempDir, family: &str) -> PathBuf {
    let p = dir.path().join(format!("{}.graph", family.replace(':', "_")));
    let o = run(&["gen", "--family", family, "-o", s(&p)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn solve_cube_report() {
    let d = TempDir::new().unwrap();
    let g = gen_file(&d, "cube");
    let o = run(&["solve", s(&g), "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["schema"], "inforest.run/1");
    assert_eq!(r["n"], 8);
    assert_eq!(r["forest_size"], 5);
    assert_eq!(r["bound"], 5);
    assert_eq!(r["oracle_optimum"], 5);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn solve_square_writes_forest_and_trace() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "c4.graph", C4);
    let (f, t) = (d.path().join("f"), d.path().join("t"));
    let o = run(&["solve", s(&g), "-o", s(&f), "--trace", s(&t)]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(&f).unwrap().lines().count(), 3);
    assert!(fs::read_to_string(&t).unwrap().starts_with("inforest-trace 1\n"));
    assert_eq!(code(&run(&["check", s(&g), s(&f)])), 0);
    let f2 = d.path().join("f2");
    assert_eq!(code(&run(&["replay", s(&g), s(&t), "-o", s(&f2)])), 0);
    assert_eq!(fs::read(&f).unwrap(), fs::read(&f2).unwrap());
}

#[test]
fn solve_is_deterministic() {
    let d = TempDir::new().unwrap();
    let g = gen_file(&d, "random:26:3:0.85");
    let a = run(&["solve", s(&g)]);
    let b = run(&["solve", s(&g)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn triangle_is_invalid_input() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "tri.graph", "3 3\n0 1\n1 2\n2 0\n");
    assert_eq!(code(&run(&["solve", s(&g)])), 2);
    let bad = write(&d, "garbage.graph", "2 1\n0 x\n");
    assert_eq!(code(&run(&["solve", s(&bad)])), 2);
}

#[test]
fn check_distinguishes_failures() {
    let d = TempDir::new().unwrap();
    let c4 = write(&d, "c4.graph", C4);
    let all = write(&d, "all", "0\n1\n2\n3\n");
    let two = write(&d, "two", "0\n2\n");
    assert_eq!(code(&run(&["check", s(&c4), s(&all)])), 4);
    assert_eq!(code(&run(&["check", s(&c4), s(&two)])), 5);
    // the cube forest {u2, u4, u5, u7, u8}
    let cube = gen_file(&d, "cube");
    let f = write(&d, "cube.forest", "1\n3\n4\n6\n7\n");
    assert_eq!(code(&run(&["check", s(&cube), s(&f)])), 0);
}

#[test]
fn oracle_prints_optimum_and_witness() {
    let d = TempDir::new().unwrap();
    let g = gen_file(&d, "t6");
    let o = run(&["oracle", s(&g), "--brute"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("optimum 4"));
    assert_eq!(lines.next().unwrap().split_whitespace().count(), 5);
}

#[test]
fn verify_lp_json() {
    let o = run(&["verify-lp", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["schema"], "inforest.lp/1");
    assert_eq!(r["optimum"], "5/9");
    assert_eq!(r["point"], serde_json::json!(["25/27", "5/27", "5/27", "2/27"]));
    assert_eq!(r["base_satisfied"], 19);
    assert!(r["certificates"].as_array().unwrap().iter().all(|c| c["verified"] == true));
    let flagged: Vec<_> = r["stated"].as_array().unwrap().iter().filter(|p| p["holds"] == false).collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0]["replacement"].is_object());
    assert_eq!(r["ok"], true);
}

#[test]
fn corpus_runs_and_aggregates() {
    let d = TempDir::new().unwrap();
    let dir = d.path().join("corpus");
    assert_eq!(code(&run(&["gen", "--corpus-dir", s(&dir)])), 0);
    let o = run(&["corpus", s(&dir), "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["schema"], "inforest.corpus/1");
    assert!(r["graphs"].as_u64().unwrap() >= 200);
    assert_eq!(r["failed"], 0);
    assert!(r["min_ratio"].as_f64().unwrap() >= 5.0 / 9.0);
    let names: Vec<&str> = r["entries"].as_array().unwrap().iter().map(|e| e["file"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn disjoint_cubes_hit_five_eighths() {
    let d = TempDir::new().unwrap();
    let dir = d.path().join("cubes");
    fs::create_dir(&dir).unwrap();
    for k in 1..=2 {
        let o = run(&["gen", "--family", &format!("cubes:{k}"), "-o", s(&dir.join(format!("cubes{k}.graph")))]);
        assert_eq!(code(&o), 0);
    }
    let r = json(&run(&["corpus", s(&dir), "--json"]));
    for e in r["entries"].as_array().unwrap() {
        assert_eq!(e["forest_size"].as_f64().unwrap() / e["n"].as_f64().unwrap(), 0.625);
        assert_eq!(e["forest_size"], e["oracle_optimum"]);
    }
}

#[test]
fn empty_corpus_is_fine() {
    let d = TempDir::new().unwrap();
    let o = run(&["corpus", s(d.path()), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["graphs"], 0);
}

#[test]
fn corpus_failures_are_reported() {
    let d = TempDir::new().unwrap();
    write(&d, "a.graph", C4);
    write(&d, "b.graph", "3 3\n0 1\n1 2\n2 0\n");
    assert_eq!(code(&run(&["corpus", s(d.path())])), 1);
    let o = run(&["corpus", s(d.path()), "--continue-on-error", "--json"]);
    assert_eq!(code(&o), 7);
    let r = json(&o);
    assert_eq!((r["passed"].as_u64(), r["failed"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn seed_changes_seeded_families() {
    let a = run(&["gen", "--family", "random:20:1"]);
    let b = run(&["gen", "--family", "random:20:1", "--seed", "2"]);
    let c = run(&["gen", "--family", "random:20:2"]);
    assert_ne!(a.stdout, b.stdout);
    assert_eq!(stdout(&b).lines().skip(1).collect::<Vec<_>>(), stdout(&c).lines().skip(1).collect::<Vec<_>>());
}
