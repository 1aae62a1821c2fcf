//! End-to-end tests of the binary: output shapes, exit codes, and
//! determinism of seeded runs.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_loopcells"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn tableau_worked_example() {
    let out = run(&["tableau", "-n", "17", "-d", "1,5,9,11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("nu     = (5,4,3,3,1,1)"));
    assert!(text.contains("red    = [1, 2, 3, 4, 12, 13]"));
    assert!(text.contains("m_seq  = [14, 15, 16, 17, 10, 11, 6, 7, 8, 9, 5]"));
    assert!(text.contains("dim G/P = 108"));
}

#[test]
fn tableau_json_contains_all_fields() {
    let out = run(&["tableau", "-n", "5", "-d", "3", "--output", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lambda"], serde_json::json!([3, 2]));
    assert_eq!(v["nu"]["parts"], serde_json::json!([2, 2, 1]));
    assert!(v["iota"].is_object());
    assert!(v["coords"].is_array());
}

#[test]
fn tableau_rejects_bad_descriptor() {
    let out = run(&["tableau", "-n", "3", "-d", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kappa_small_cases() {
    let out = run(&["kappa", "-n", "3", "-d", "1,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lengths      : kappa 7, tau_q 6, sigma 1"));

    let out = run(&["kappa", "-n", "4", "-d", "2", "--output", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["checks"]["is_compactification"], true);
    assert_eq!(v["all_pass"], true);

    let out = run(&["kappa", "-n", "17", "-d", "1,5,9,11", "--output", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["lengths"]["kappa"], 272);
    assert_eq!(v["report"]["checks"]["is_compactification"], false);
}

#[test]
fn cell_text_and_json_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z3.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# 1 - t^-1 (E12 + E23)").unwrap();
    writeln!(f, "3").unwrap();
    writeln!(f, "1; -t^-1; 0").unwrap();
    writeln!(f, "0; 1; -t^-1").unwrap();
    writeln!(f, "0; 0; 1").unwrap();
    drop(f);

    let out = run(&["cell", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("window : [-3,4,5]"));
    assert!(text.contains("t^2@(3,1)"));

    let out = run(&[
        "cell",
        path.to_str().unwrap(),
        "--output",
        "json",
        "--mod",
        "s0",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["length"], 4);
    assert_eq!(v["exps"], serde_json::json!([2, -1, -1]));

    // Identity matrix in JSON form maps to the identity cell.
    let json_path = dir.path().join("id.json");
    std::fs::write(
        &json_path,
        r#"{"n":2,"entries":[[[[0,1,1]],[]],[[],[[0,1,1]]]]}"#,
    )
    .unwrap();
    let out = run(&["cell", json_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("window : [1,2]"));
}

#[test]
fn cell_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2\n1; nonsense\n0; 1\n").unwrap();
    let out = run(&["cell", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let singular = dir.path().join("singular.txt");
    std::fs::write(&singular, "2\n1; 1\n1; 1\n").unwrap();
    let out = run(&["cell", singular.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let missing = dir.path().join("missing.txt");
    let out = run(&["cell", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_all_small_and_deterministic() {
    let args = [
        "check-all",
        "--max-n",
        "3",
        "--trials",
        "20",
        "--seed",
        "7",
        "--output",
        "json",
    ];
    let first = run(&args);
    assert!(first.status.success());
    let second = run(&args);
    assert_eq!(stdout(&first), stdout(&second));
    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["descriptors"].as_array().unwrap().len(), 2 + 4);
}

#[test]
fn check_all_env_seed_and_outdir() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "check-all",
            "--max-n",
            "2",
            "--trials",
            "5",
            "--output",
            "json",
        ])
        .env("LOOPCELLS_SEED", "99")
        .env("LOOPCELLS_OUTDIR", dir.path())
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["seed"], 99);
    let mirrored = std::fs::read_to_string(dir.path().join("check-all.json")).unwrap();
    assert_eq!(mirrored, stdout(&out).trim_end_matches('\n'));
}

#[test]
fn check_all_validates_config() {
    let out = run(&["check-all", "--max-n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check-all", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn term_budget_reports_skips() {
    let out = run(&[
        "check-all",
        "--max-n",
        "2",
        "--trials",
        "5",
        "--term-budget",
        "1",
    ]);
    // Criteria still run; descriptor rows are skipped, not failed.
    assert!(out.status.success());
    assert!(stdout(&out).contains("SKIP"));
}
