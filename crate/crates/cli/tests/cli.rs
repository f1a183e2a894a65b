use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hopfo() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hopfo"));
    c.env_remove("HOPFO_WORKSPACE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    hopfo().args(args).output().expect("hopfo runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn report(args: &[&str], dir: &Path, name: &str) -> (i32, Value) {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--report", p]);
    let o = run(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("no report; stderr: {}", String::from_utf8_lossy(&o.stderr)));
    (o.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

fn row<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no row {name} in {r}"))
}

#[test]
fn builtin_hopf_algebras_verify() {
    for b in ["builtin:trivial", "builtin:truncated_poly(p=2)", "builtin:truncated_poly(p=3)", "builtin:cyclic(n=3)", "builtin:sweedler"] {
        let o = run(&["verify", b]);
        assert_eq!(o.status.code(), Some(0), "{b}: {}", stdout(&o));
        assert!(stdout(&o).contains("antipode"), "{b}");
    }
}

#[test]
fn corrupted_workspace_names_the_failing_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixtures().join("dual-numbers-gf2.json")).unwrap();
    let mut ws: Value = serde_json::from_str(&text).unwrap();
    // Break the counit: ε(d) = 1 is not multiplicative since d² = 0.
    ws["hopf_algebras"]["H"]["counit"] = serde_json::json!([1, 1]);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, ws.to_string()).unwrap();
    let (code, r) = report(&["-w", path.to_str().unwrap(), "verify", "H"], dir.path(), "r.json");
    assert_eq!(code, 1);
    assert_eq!(r["passed"], false);
    let failed: Vec<&str> = r["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").map(|c| c["name"].as_str().unwrap()).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|n| n.contains("counit")), "{failed:?}");
}

#[test]
fn stable_hom_of_trivial_module_over_dual_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let ws = fixtures().join("dual-numbers-gf2.json");
    let (code, r) = report(&["-w", ws.to_str().unwrap(), "stable", "hom", "k", "k"], dir.path(), "r.json");
    assert_eq!(code, 0);
    let hom = row(&r, "stable_hom");
    assert_eq!(hom["dims"]["dim"], 1, "{r}");
}

#[test]
fn free_modules_are_stably_zero_and_k_is_not() {
    let o = run(&["stable", "zero", "builtin:truncated_poly(p=2)/free(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("stably_zero=true"), "{}", stdout(&o));
    let o = run(&["stable", "zero", "builtin:truncated_poly(p=2)/k"]);
    assert!(stdout(&o).contains("stably_zero=false"), "{}", stdout(&o));
}

#[test]
fn shifts_of_k() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = report(&["stable", "shift", "builtin:truncated_poly(p=2)/k", "1"], dir.path(), "up.json");
    assert_eq!(code, 0);
    assert_eq!(r["characteristic"], 2);
    assert!(r.to_string().contains("\"dim\":1"), "{r}");
    let o = run(&["stable", "shift", "builtin:truncated_poly(p=2)/k", "-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn rickard_comparison_on_sweedler() {
    let o = run(&["derived", "rickard", "builtin:sweedler/k", "builtin:sweedler/k", "--char", "5", "--i", "1..3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn ext_of_trivial_module_over_truncated_polynomials() {
    let dir = tempfile::tempdir().unwrap();
    let ws = fixtures().join("truncated-gf3.json");
    let (code, r) = report(&["-w", ws.to_str().unwrap(), "derived", "ext", "k", "k", "2"], dir.path(), "r.json");
    assert_eq!(code, 0);
    assert_eq!(row(&r, "ext2")["dims"]["dim"], 1, "{r}");
}

#[test]
fn check_suites_pass() {
    for suite in ["frobenius", "rickard"] {
        let o = run(&["check", suite, "--count", "2", "--max-dim", "3"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

/// Drops wall-clock timings and the command line (which names the report path).
fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("command");
    for c in v["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("timing_ms");
    }
    v
}

#[test]
fn check_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["check", "all", "--seed", "42", "--count", "1", "--max-dim", "3", "--window", "3", "--i", "1..2"];
    let (c1, a) = report(&args, dir.path(), "a.json");
    let (c2, b) = report(&args, dir.path(), "b.json");
    assert_eq!(c1, 0, "{a}");
    assert_eq!(c2, 0);
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn fixtures_match_emitted_examples_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["examples", "emit", "all", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut seen = 0;
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_owned();
        let emitted = std::fs::read_to_string(dir.path().join(&name)).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), emitted, "{name:?} is stale");
        let ws: Value = serde_json::from_str(&emitted).unwrap();
        for section in ["hopf_algebras", "module_algebras", "comodule_algebras", "modules", "morphisms", "complexes"] {
            for obj in ws[section].as_object().into_iter().flat_map(|m| m.keys()) {
                let o = run(&["-w", path.to_str().unwrap(), "verify", obj]);
                assert_eq!(o.status.code(), Some(0), "{name:?} {obj}: {}", stdout(&o));
            }
        }
        seen += 1;
    }
    assert_eq!(seen, 7);
}

#[test]
fn workspace_dir_supplies_the_default_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixtures().join("sweedler-gf5.json"), dir.path().join("workspace.json")).unwrap();
    let o = hopfo().env("HOPFO_WORKSPACE_DIR", dir.path()).args(["stable", "hom", "k", "k"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = hopfo().env("HOPFO_WORKSPACE_DIR", dir.path()).args(["--char", "3", "verify", "H"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["--char", "4", "verify", "builtin:trivial"][..],
        &["verify", "nothing_by_this_name"],
        &["stable", "hom", "builtin:frobnicate/k", "builtin:frobnicate/k"],
        &["-w", "/nonexistent/ws.json", "verify", "H"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    }
}
