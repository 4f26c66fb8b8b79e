use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn prismdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prismdom"))
        .args(args)
        .env_remove("PRISMDOM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = prismdom(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn figure_graph(dir: &Path) -> PathBuf {
    let path = dir.join("figure.txt");
    std::fs::write(&path, "# paper labels\n5 5\n1 2\n3 4\n2 4\n1 3\n4 5\n").unwrap();
    path
}

#[test]
fn gen_writes_headers() {
    let dir = tempfile::tempdir().unwrap();
    let out = prismdom(&["gen", "--family", "path", "--n", "6", "--out", dir.path().join("p.txt").to_str().unwrap()]);
    assert_eq!(stdout(&out), "6 5\n");
    let text = std::fs::read_to_string(dir.path().join("p.txt")).unwrap();
    assert!(text.starts_with("6 5\n"));
    let out = prismdom(&["gen", "--family", "cycle", "--n", "5"]);
    assert!(stdout(&out).starts_with("5 5\n"));
}

#[test]
fn gen_random_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--family", "random", "--n", "8", "--density", "1/2", "--seed", "3"];
    let a = std::fs::read(gen(dir.path(), "a.txt", &args)).unwrap();
    let b = std::fs::read(gen(dir.path(), "b.txt", &args)).unwrap();
    assert_eq!(a, b);
    let out = prismdom(&["gen", "--family", "random", "--n", "8"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gamma_values() {
    let dir = tempfile::tempdir().unwrap();
    let p6 = gen(dir.path(), "p6.txt", &["--family", "path", "--n", "6"]);
    let out = prismdom(&["gamma", p6.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("gamma = 2\n"));
    let p4 = gen(dir.path(), "p4.txt", &["--family", "path", "--n", "4"]);
    let out = prismdom(&["gamma", p4.to_str().unwrap(), "-p", "3/4", "--oracle"]);
    assert!(stdout(&out).starts_with("gamma_p = 1\n"), "{}", stdout(&out));
    let k5 = gen(dir.path(), "k5.txt", &["--family", "complete", "--n", "5"]);
    let out = prismdom(&["gamma", k5.to_str().unwrap()]);
    assert!(stdout(&out).starts_with("gamma = 1\n"));
    let out = prismdom(&["--json", "gamma", p6.to_str().unwrap()]);
    assert_eq!(json(&out)["result"]["value"], 2);
}

#[test]
fn malformed_graph_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 2\n0 1\n1 x\n").unwrap();
    let out = prismdom(&["gamma", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn profile_lines() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = gen(dir.path(), "p4.txt", &["--family", "path", "--n", "4"]);
    let out = prismdom(&["profile", p4.to_str().unwrap()]);
    assert_eq!(stdout(&out), "0 0\n1 3\n2 4\n3 4\n4 4\n");
}

#[test]
fn prism_of_figure_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = figure_graph(dir.path());
    let out_path = dir.path().join("prism.txt");
    let args = ["--one-indexed", "prism", g.to_str().unwrap(), "--pi", "(2 3 4)", "--out", out_path.to_str().unwrap()];
    let out = prismdom(&args);
    assert_eq!(stdout(&out), "10 15\n");
    let first = std::fs::read(&out_path).unwrap();
    prismdom(&args);
    assert_eq!(std::fs::read(&out_path).unwrap(), first);
    // dashed edge 3 — 4' is 3 — 9 in 1-indexed prism labels
    let text = String::from_utf8(first).unwrap();
    assert!(text.lines().any(|l| l == "3 9"), "{text}");

    let p2 = gen(dir.path(), "p2.txt", &["--family", "path", "--n", "2"]);
    let out = prismdom(&["prism", p2.to_str().unwrap(), "--out", dir.path().join("c4.txt").to_str().unwrap()]);
    assert_eq!(stdout(&out), "4 4\n");
    let pi_file = dir.path().join("pi.txt");
    std::fs::write(&pi_file, "1 0\n").unwrap();
    let out = prismdom(&["prism", p2.to_str().unwrap(), "--pi", pi_file.to_str().unwrap()]);
    assert!(stdout(&out).contains("4 4"));
    let out = prismdom(&["prism", p2.to_str().unwrap(), "--pi", "0 1 2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_classifies_complete_four() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = gen(dir.path(), "k4.txt", &["--family", "complete", "--n", "4"]);
    let r = json(&prismdom(&["--json", "sweep", k4.to_str().unwrap(), "-p", "5/8", "--all"]));
    assert_eq!(r["result"]["classification"], "Fixer");
    assert_eq!(r["result"]["histogram"]["1"], 24);
    let r = json(&prismdom(&["--json", "sweep", k4.to_str().unwrap(), "-p", "1", "--all"]));
    assert_eq!(r["result"]["classification"], "Doubler");
    let text = stdout(&prismdom(&["sweep", k4.to_str().unwrap(), "-p", "1", "--all"]));
    assert!(text.ends_with("classification = Doubler (universal)\n"), "{text}");
    for key in ["n", "p", "mode", "histogram", "min", "max", "witness_min", "witness_max", "classification"] {
        assert!(r["result"].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn sweep_sampling_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let p9 = gen(dir.path(), "p9.txt", &["--family", "path", "--n", "9"]);
    let out = prismdom(&["sweep", p9.to_str().unwrap(), "-p", "1/2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sampling"));
    let args = ["--json", "sweep", p9.to_str().unwrap(), "-p", "1/2", "--sample", "200", "--seed", "1"];
    let r = json(&prismdom(&args));
    let res = &r["result"];
    assert_eq!(res["universal"], false);
    let base = res["base_value"].as_u64().unwrap();
    let (min, max) = (res["min"].as_u64().unwrap(), res["max"].as_u64().unwrap());
    assert!(base <= min && min <= max && max <= 2 * base);
    let total: u64 = res["histogram"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 200);
    // job count does not change the report
    let mut with_jobs = vec!["--jobs", "1"];
    with_jobs.extend_from_slice(&args);
    let r1 = json(&prismdom(&with_jobs));
    assert_eq!(r1["result"], r["result"]);
    // an explicit cap below n still refuses
    let out = Command::new(env!("CARGO_BIN_EXE_prismdom"))
        .args(["sweep", dir.path().join("p9.txt").to_str().unwrap(), "-p", "1", "--cap", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_exit_codes() {
    let out = prismdom(&["--json", "verify", "--prop", "3", "--family", "path", "--n", "6", "--all-pi"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["verdict"], "holds");
    assert_eq!(r["result"]["checks"], 720);

    let out = prismdom(&["verify", "--prop", "5", "--family", "random", "--n", "7", "--seed", "3", "--density", "1/2", "--sample", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let explicit = prismdom(&["verify", "--prop", "5", "--family", "random", "--n", "7", "--seed", "3", "--graph-seed", "3", "--density", "1/2", "--sample", "30"]);
    assert_eq!(stdout(&explicit), stdout(&out));

    let out = prismdom(&["--json", "verify", "--prop", "1", "--family", "path", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["verdict"], "preconditions-unmet");

    let out = prismdom(&["verify", "--prop", "1", "--family", "star", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("note: step at p = 3/5\n"), "{text}");
    assert!(text.ends_with("verdict = holds\n"));

    let out = prismdom(&["verify", "--prop", "8", "--family", "path", "--n", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_counterexample_exit_and_certificate() {
    // a necessity counterexample for the max-degree biconditional
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    std::fs::write(&g, "6 5\n0 5\n1 3\n1 5\n2 4\n4 5\n").unwrap();
    let args = ["verify", "--prop", "4", "--graph", g.to_str().unwrap(), "--pi", "5 2 1 4 3 0"];
    let out = prismdom(&args);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness {1, 11}"));
    let mut with_json = vec!["--json"];
    with_json.extend_from_slice(&args);
    let r = json(&prismdom(&with_json));
    let cert = &r["result"]["certificate"];
    assert_eq!(cert["computed"], 2);
    assert_eq!(cert["p"], "3/4");
    assert_eq!(r["result"]["prop4"]["left"], true);
    assert_eq!(r["result"]["prop4"]["first_argmax"]["condition"], false);
}

#[test]
fn verify_independent_set_claims() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = gen(dir.path(), "c6.txt", &["--family", "cycle", "--n", "6"]);
    let out = prismdom(&["verify", "--prop", "6", "--graph", c6.to_str().unwrap(), "--m", "0,3", "--all-pi"]);
    assert_eq!(out.status.code(), Some(0));
    let out = prismdom(&["verify", "--prop", "6", "--graph", c6.to_str().unwrap(), "--m", "0,2"]);
    assert_eq!(out.status.code(), Some(2));

    let gadget = dir.path().join("gadget.txt");
    std::fs::write(&gadget, "5 4\n0 2\n0 3\n1 2\n1 4\n").unwrap();
    let out = prismdom(&["verify", "--prop", "7", "--graph", gadget.to_str().unwrap(), "--m", "0,1", "--pi", "identity"]);
    assert_eq!(out.status.code(), Some(0));
    let out = prismdom(&["verify", "--prop", "7", "--graph", gadget.to_str().unwrap(), "--m", "0,1", "--pi", "(0 2)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = prismdom(&["find-t", gadget.to_str().unwrap(), "--m", "0,1"]);
    assert_eq!(stdout(&out), "case = Identity\nT = {0, 6}\naudit = ok\n");
    let out = prismdom(&["--one-indexed", "find-t", gadget.to_str().unwrap(), "--m", "1,2", "--pi", "(1 2)"]);
    assert_eq!(out.status.code(), Some(3), "0-indexed file read as 1-indexed must fail");
}

#[test]
fn help_exits_zero() {
    assert_eq!(prismdom(&["--help"]).status.code(), Some(0));
}
