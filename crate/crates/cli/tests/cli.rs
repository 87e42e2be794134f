use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const A_RM: &str = "1,1,0,0\n1,0,1,0\n0,1,0,1\n0,0,1,1\n";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nnspectra"));
    c.env_remove("NNSPECTRA_BUDGET");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn param_on_a_rm() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.csv", A_RM);
    let out = run(&["param", p(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "param");
    let r = &v["results"];
    assert_eq!(r["rank"], 3);
    assert_eq!(r["F"], "4");
    assert_eq!(r["subrank"], 2);
    assert_eq!(r["nnrank"]["lower"], 4);
    assert_eq!(r["nnrank"]["upper"], 4);
    assert_eq!(r["nnrank"]["certified"], true);
    assert_eq!(v["warnings"], serde_json::json!([]));
}

#[test]
fn param_on_identity_and_zero() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "i.csv", "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
    let r = json(&run(&["param", p(&id)]))["results"].clone();
    assert_eq!((r["rank"].clone(), r["subrank"].clone(), r["F"].clone()), (4.into(), 4.into(), "4".into()));
    assert_eq!((r["nnrank"]["lower"].clone(), r["nnrank"]["upper"].clone()), (4.into(), 4.into()));

    let zero = write(&dir, "z.csv", "0,0\n0,0\n0,0\n");
    let r = json(&run(&["param", p(&zero)]))["results"].clone();
    assert_eq!((r["rank"].clone(), r["subrank"].clone(), r["F"].clone()), (0.into(), 0.into(), "0".into()));
    assert_eq!((r["nnrank"]["lower"].clone(), r["nnrank"]["upper"].clone()), (0.into(), 0.into()));
}

#[test]
fn asymptotic_examples() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", A_RM);
    let v = json(&run(&["asymptotic", p(&a), "--max-power", "2"]));
    assert_eq!(v["results"]["asynrank"], serde_json::json!({"lower": "4", "upper": "4"}));

    let t = write(&dir, "t.csv", "2,1,0,3\n0,1,1,0\n0,0,5,1/2\n");
    let out = run(&["asymptotic", p(&t), "--max-power", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["asynrank"], serde_json::json!({"lower": "3", "upper": "3"}));
    assert_eq!(v["results"]["asympsubrank"], serde_json::json!({"lower": "3", "upper": "3"}));

    let i = write(&dir, "i.json", r#"{"rows": 2, "cols": 2, "entries": [[1, 0], [0, "1"]]}"#);
    let v = json(&run(&["asymptotic", p(&i), "--max-power", "4"]));
    assert_eq!(v["results"]["asynrank"], serde_json::json!({"lower": "2", "upper": "2"}));
    assert_eq!(v["results"]["asympsubrank"], serde_json::json!({"lower": "2", "upper": "2"}));
    assert_eq!(v["results"]["per_power"].as_array().unwrap().len(), 4);
}

#[test]
fn congruence_and_equivalence() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", "1,2,0\n0,3,1\n");
    let b = write(&dir, "b.csv", "1,0,6\n0,3/2,0\n");
    // different support sizes
    let out = run(&["congruent", p(&a), p(&b)]);
    let v = json(&out);
    assert_eq!(v["results"]["congruent"], false);

    // columns permuted, entries rescaled
    let c = write(&dir, "c.csv", "2,0,3\n0,4,1\n");
    let v = json(&run(&["congruent", p(&a), p(&c)]));
    assert_eq!(v["results"]["congruent"], true);
    assert!(v["results"]["witness"]["row"]["permutation"].is_array());

    let padded = write(&dir, "pad.csv", "1,2,0,0\n0,3,1,0\n0,0,0,0\n");
    assert_eq!(json(&run(&["equivalent", p(&a), p(&padded)]))["results"]["equivalent"], true);

    let i2 = write(&dir, "i2.csv", "1,0\n0,1\n");
    let i3 = write(&dir, "i3.csv", "1,0,0\n0,1,0\n0,0,1\n");
    let out = run(&["equivalent", p(&i2), p(&i3)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["equivalent"], false);
}

#[test]
fn exhausted_search_is_unknown() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", "1,1,1,1\n1,1,1,1\n1,1,1,1\n1,1,1,1\n");
    let b = write(&dir, "b.csv", "1,1,1,1\n1,1,1,1\n1,1,1,1\n1,1,1,2\n");
    let out = run(&["congruent", p(&a), p(&b), "--budget", "3"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["results"]["congruent"], Value::Null);
    assert_eq!(v["warnings"][0], "search budget exhausted");

    let out = bin().args(["congruent", p(&a), p(&b)]).env("NNSPECTRA_BUDGET", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(run(&["congruent", p(&a), p(&b)]).status.code(), Some(0));
}

#[test]
fn budget_limited_subrank_exits_three() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", "1,1,0\n0,1,1\n1,0,1\n");
    let out = run(&["param", p(&a), "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert!(v["warnings"][0].as_str().unwrap().starts_with("search budget exhausted"));
}

#[test]
fn cover_and_triangular() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", A_RM);
    assert_eq!(json(&run(&["cover", p(&a), "--t", "1"]))["results"]["value"], "4");
    assert_eq!(json(&run(&["cover", p(&a)]))["results"]["value"], "4");
    let b = write(&dir, "b.csv", "1,0,1,1\n0,1,1,0\n0,1,1,1\n1,1,0,1\n");
    assert_eq!(json(&run(&["cover", p(&b)]))["results"]["value"], "7/2");

    let t = write(&dir, "t.csv", "1,2,3\n0,1,1\n0,0,1\n");
    let v = json(&run(&["triangular", p(&t), "--power", "3"]));
    assert_eq!(v["results"]["count"], "6");
    assert_eq!(v["results"]["strings"].as_array().unwrap().len(), 6);
    let out = run(&["triangular", p(&t), "--power", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn propcheck_passes_and_is_reproducible() {
    let out = run(&["propcheck", "--point", "rank", "--trials", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["pass"], true);
    assert_eq!(v["results"]["reports"][0]["passed"]["multiplicativity"], 100);

    let args = ["propcheck", "--trials", "10", "--max-dim", "3", "--seed", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", A_RM);
    let first = run(&["param", p(&a)]).stdout;
    assert_eq!(first, run(&["param", p(&a)]).stdout);
    let target = dir.path().join("report.json");
    let out = run(&["param", p(&a), "--output", p(&target)]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), first);
    let pretty = String::from_utf8(run(&["param", p(&a), "--pretty"]).stdout).unwrap();
    assert!(pretty.lines().any(|l| l.starts_with("results.rank ") && l.ends_with(" 3")));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let ragged = write(&dir, "r.csv", "1,2\n3\n");
    let negative = write(&dir, "n.csv", "1,-2\n");
    let zero_den = write(&dir, "d.csv", "1/0\n");
    for f in [&ragged, &negative, &zero_den] {
        let out = run(&["param", p(f)]);
        assert_eq!(out.status.code(), Some(2), "{}", p(f));
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["error"], "input");
    }
    let csv_as_json = write(&dir, "x.csv", A_RM);
    assert_eq!(run(&["param", p(&csv_as_json), "--format", "json"]).status.code(), Some(2));
    assert_eq!(run(&["param", "/does/not/exist.csv"]).status.code(), Some(2));
}
