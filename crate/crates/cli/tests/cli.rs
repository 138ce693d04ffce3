use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use drinfeld_endo_cli::{resolve_bound, run_analysis, Problem, ProblemConfig, Report, BOUND_ENV};

const BIN: &str = env!("CARGO_BIN_EXE_drinfeld-endo");

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str], env: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove(BOUND_ENV);
    if let Some(v) = env {
        cmd.env(BOUND_ENV, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Writes `text` to a fresh file under the target tmp dir.
fn temp_config(tag: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(format!("{tag}.json"));
    std::fs::write(&path, text).unwrap();
    path
}

fn example() -> String {
    fixture("f5_example.json").to_string_lossy().into_owned()
}

#[test]
fn golden_json_report() {
    let o = run(&["analyze", &example()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let golden = std::fs::read_to_string(fixture("f5_example.report.json")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn golden_text_report() {
    let o = run(&["analyze", &example(), "--format", "text"], None);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("f5_example.report.txt")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn reruns_are_byte_identical() {
    let a = run(&["analyze", &example()], None);
    let b = run(&["analyze", &example()], None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_values() {
    let o = run(&["analyze", &example()], None);
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.delta, "T^4 + 2*T^3 + 2");
    assert_eq!(r.delta_factored, "(T + 4)^2 (T^2 + 4*T + 2)");
    assert_eq!(r.standard_form.disc_m0_factored, "(T)^2 (T + 4)^2 (T^2 + 4*T + 2)");
    assert_eq!((r.index.as_str(), r.beta2.as_str(), r.alpha2.as_str()), ("T", "4", "3"));
    assert_eq!(r.frobenius_order, "(T,0,1)");
    let hnfs: Vec<_> = r.orders.iter().map(|o| (o.hnf.as_str(), o.label.as_str())).collect();
    assert_eq!(hnfs, [("(1,0,1)", "O_max"), ("(T,0,1)", "A[pi]")]);
    assert_eq!(r.orders[1].conductor_norm, "T^2");
    let ids: Vec<_> = r.identifications.iter().map(|i| (i.module.as_str(), i.order.as_deref())).collect();
    assert_eq!(ids, [("phi", Some("(1,0,1)")), ("psi", None), ("psi_in_class", Some("(T,0,1)"))]);
}

#[test]
fn json_round_trip() {
    let cfg = ProblemConfig::load(&fixture("f5_example.json")).unwrap();
    let problem = Problem::build(&cfg).unwrap();
    let report = run_analysis(&problem, 1000).unwrap();
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
}

#[test]
fn check_module_verdicts() {
    for (name, want) in [
        ("phi", "in class: yes; End = O_max(1,0,1)\n"),
        ("psi_in_class", "in class: yes; End = A[pi](T,0,1)\n"),
        ("psi", "in class: no (M(pi) != 0)\n"),
    ] {
        let o = run(&["check-module", &example(), "--name", name], None);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), want, "{name}");
    }
}

#[test]
fn rank_two_module_is_not_in_class() {
    let text = std::fs::read_to_string(fixture("f5_example.json"))
        .unwrap()
        .replace(r#""phi_T": [0, 1, 1, 1]"#, r#""phi_T": [0, 1, 1]"#);
    let path = temp_config("rank_two", &text);
    let o = run(&["check-module", path.to_str().unwrap(), "--name", "psi"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "in class: no (rank mismatch)\n");
}

#[test]
fn unknown_module_and_bad_json_exit_2() {
    let o = run(&["check-module", &example(), "--name", "nope"], None);
    assert_eq!(o.status.code(), Some(2));
    let bad = temp_config("truncated", "{\"field\":");
    assert_eq!(run(&["analyze", bad.to_str().unwrap()], None).status.code(), Some(2));
    let missing = fixture("does_not_exist.json");
    assert_eq!(run(&["analyze", missing.to_str().unwrap()], None).status.code(), Some(2));
    let extra = temp_config(
        "unknown_key",
        r#"{"field":{"p":5},"pv":[0,1],"m":3,"weil":{"a1":[1,1],"a2":[4,3,1],"mu":4},"colour":1}"#,
    );
    assert_eq!(run(&["analyze", extra.to_str().unwrap()], None).status.code(), Some(2));
}

#[test]
fn reducible_weil_polynomial_exits_3() {
    // (x - T)(x^2 + 1)
    let path = temp_config(
        "reducible",
        r#"{"field":{"p":5},"pv":[0,1],"m":1,"weil":{"a1":[0,4],"a2":[1],"mu":4}}"#,
    );
    let o = run(&["analyze", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn characteristic_three_exits_3() {
    let path = temp_config(
        "char3",
        r#"{"field":{"p":3},"pv":[0,1],"m":3,"weil":{"a1":[1,1],"a2":[1,1,1],"mu":1}}"#,
    );
    let o = run(&["analyze", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn candidate_bound_exits_5() {
    let o = run(&["analyze", &example(), "--candidate-bound", "1"], None);
    assert_eq!(o.status.code(), Some(5));
    let o = run(&["analyze", &example()], Some("1"));
    assert_eq!(o.status.code(), Some(5));
    // the flag wins over the environment
    let o = run(&["analyze", &example(), "--candidate-bound", "10"], Some("1"));
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["analyze", &example()], Some("many"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_precedence() {
    let cfg = ProblemConfig::load(&fixture("f5_example.json")).unwrap();
    assert_eq!(resolve_bound(Some(7), Some("9"), &cfg).unwrap(), 7);
    assert_eq!(resolve_bound(None, Some("9"), &cfg).unwrap(), 9);
    assert_eq!(resolve_bound(None, None, &cfg).unwrap(), 1_000_000);
}

#[test]
fn config_without_modules() {
    let path = temp_config(
        "no_modules",
        r#"{"field":{"p":5},"pv":[0,1],"m":3,"weil":{"a1":[1,1],"a2":[4,3,1],"mu":4}}"#,
    );
    let o = run(&["analyze", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert!(r.identifications.is_empty());
    assert_eq!(r.orders.len(), 2);
}

#[test]
fn extension_degree_must_match() {
    let text = std::fs::read_to_string(fixture("f5_example.json"))
        .unwrap()
        .replace(r#""modulus": [3, 3, 0, 1]"#, r#""modulus": [2, 0, 1]"#);
    let path = temp_config("wrong_l", &text);
    assert_eq!(run(&["analyze", path.to_str().unwrap()], None).status.code(), Some(2));
}
