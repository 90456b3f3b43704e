use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn dibrooks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dibrooks"))
        .args(args)
        .env_remove("DIBROOKS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn symmetric_complete(n: usize) -> String {
    let mut s = format!("p dgr {n} {}\n", n * (n - 1));
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            s += &format!("a {u} {v}\n");
        }
    }
    s
}

fn symmetric_cycle(n: usize) -> String {
    let mut s = format!("p dgr {n} {}\n", 2 * n);
    for u in 0..n {
        let v = (u + 1) % n;
        s += &format!("a {u} {v}\na {v} {u}\n");
    }
    s
}

#[test]
fn classify_symmetric_k5() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k5.txt", &symmetric_complete(5));
    let out = dibrooks(&["--json", "classify", arg(&g)]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["exception"]["kind"], "SymmetricComplete");
    assert_eq!(v["exception"]["k"], 4);
}

#[test]
fn classify_non_exception() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.txt", "p dgr 3 2\na 0 1\na 1 2\n");
    let out = dibrooks(&["--json", "classify", arg(&g)]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["exception"].is_null());
}

#[test]
fn partition_colours_symmetric_c4_with_two_colours() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.txt", &symmetric_cycle(4));
    let col = dir.path().join("c4.json");
    let out = dibrooks(&["--json", "colour", arg(&g), "--strategy", "partition", "-o", arg(&col)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["num_colours"], 2);

    assert!(dibrooks(&["check", arg(&g), arg(&col)]).status.success());
    // The JSON report itself is also accepted by `check`.
    let report = write(&dir, "report.json", &stdout(&out));
    assert!(dibrooks(&["check", arg(&g), arg(&report)]).status.success());
}

#[test]
fn every_strategy_colours_within_delta_max() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.txt", "p dgr 5 7\na 0 1\na 1 2\na 2 3\na 3 4\na 4 0\na 2 0\na 0 2\n");
    for s in ["lovasz", "induction", "ktree", "partition", "auto"] {
        let out = dibrooks(&["--json", "colour", arg(&g), "--strategy", s]);
        assert!(out.status.success(), "{s}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(v["num_colours"].as_u64().unwrap() <= 2, "{s}");
    }
}

#[test]
fn check_rejects_monochromatic_cycle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.txt", &symmetric_cycle(4));
    let col = write(&dir, "mono.json", "[1, 1, 1, 1]");
    assert_eq!(dibrooks(&["check", arg(&g), arg(&col)]).status.code(), Some(1));
}

#[test]
fn chi_of_symmetric_complete() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.txt", &symmetric_complete(4));
    let out = dibrooks(&["--json", "chi", arg(&g)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["chi"], 4);
}

#[test]
fn selftest_small_passes() {
    let out = dibrooks(&["selftest", "--n-max", "5", "--trials", "60"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.txt", "p dgr 2 1\na 0 7\n");
    let out = dibrooks(&["chi", arg(&g)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(dibrooks(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn generated_graphs_round_trip_and_repeat() {
    let dir = TempDir::new().unwrap();
    let a = dibrooks(&["gen", "random", "7", "--seed", "11"]);
    let b = dibrooks(&["gen", "random", "7", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("# generated with seed 11"));
    let parsed = dibrooks::io::parse_edge_list(&text).unwrap();
    assert_eq!(parsed.n(), 7);

    let path = write(&dir, "g.txt", &text);
    assert!(dibrooks(&["colour", arg(&path)]).status.success());
}

#[test]
fn seed_comes_from_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_dibrooks"));
        cmd.args(["gen", "kregular", "8", "3"]);
        match env {
            Some(s) => cmd.env("DIBROOKS_SEED", s),
            None => cmd.env_remove("DIBROOKS_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    let via_env = run(Some("5"));
    let via_flag = dibrooks(&["gen", "kregular", "8", "3", "--seed", "5"]).stdout;
    assert_eq!(via_env, via_flag);
    assert_ne!(via_env, run(None));
}

#[test]
fn ktree_generation_exposes_decomposition() {
    let out = dibrooks(&["--json", "gen", "ktree", "3", "4", "--seed", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["params"]["decomposition"]["k"], 3);
    assert_eq!(v["params"]["decomposition"]["pieces"].as_array().unwrap().len(), 4);
}

#[test]
fn reduce_reports_vertex_map() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c3.txt", "p dgr 3 3\na 0 1\na 1 2\na 2 0\n");
    let out = dibrooks(&["--json", "reduce", arg(&g), "-k", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["graph"]["n"], 9);
    assert_eq!(v["vertex_map"].as_array().unwrap().len(), 3);
}

#[test]
fn dot_output_labels_colours() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.txt", &symmetric_cycle(4));
    let col = write(&dir, "col.json", "[1, 2, 1, 2]");
    let out = dibrooks(&["dot", arg(&g), "--colouring", arg(&col)]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("label=\"1:2\""));
}
