use std::io::Write as _;

use subord_cli::{run, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_MALFORMED, EXIT_OK};

fn subord(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("subord").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn sum_disk_is_admissible_with_radius_two() {
    let (code, out) = subord(&["admissible", "--example", "4.1", "--n", "1", "--beta", "1", "--M", "1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("verdict: AdmissibleExact"), "{out}");
    assert!(out.contains("sharp radius: 2.0000000000"), "{out}");
}

#[test]
fn half_plane_below_threshold_reports_a_witness() {
    let (code, out) = subord(&["admissible", "--example", "first-order-half-plane", "--n", "1", "--beta", "2"]);
    assert_eq!(code, EXIT_FAIL, "{out}");
    assert!(out.contains("verdict: Violation"), "{out}");
    assert!(out.contains("witness: theta="), "{out}");
}

#[test]
fn custom_problem_matches_the_catalogued_one() {
    let (code, out) = subord(&[
        "admissible",
        "--psi",
        "0, 1, 0, 1, 1",
        "--q",
        "disk(1, 0)",
        "--omega",
        "disk(0, 2)",
        "--n",
        "1",
        "--beta",
        "1",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("sharp radius: 2.0000000000"), "{out}");
}

#[test]
fn falsify_exit_codes() {
    let (code, out) = subord(&["--samples", "50", "falsify", "--example", "4.1", "--n", "1", "--beta", "1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out) = subord(&[
        "--samples",
        "50",
        "falsify",
        "--example",
        "4.1",
        "--n",
        "1",
        "--beta",
        "1",
        "--shrink-conclusion",
        "0.5",
    ]);
    assert_eq!(code, EXIT_FAIL, "{out}");
    assert!(out.contains("counterexample sample"), "{out}");
    let (code, out) = subord(&["--samples", "50", "falsify", "--example", "4.2", "--beta", "1"]);
    assert_eq!(code, EXIT_INCONCLUSIVE, "{out}");
    assert!(out.contains("vacuous"), "{out}");
    let (code, out) = subord(&["--samples", "0", "falsify", "--example", "4.1", "--n", "1", "--beta", "1"]);
    assert_eq!(code, EXIT_INCONCLUSIVE, "{out}");
}

#[test]
fn order_sweep_and_corpus() {
    let (code, out) = subord(&["order", "--theorem", "sqrt-ratio", "--a2", "2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("0.500000000000"), "{out}");
    let (code, out) = subord(&["order", "--theorem", "5.1", "--sweep", "0:1:5", "--verify"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn lemma_spot_check() {
    let (code, out) = subord(&["--trials", "50", "lemma", "--which", "schwarz"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn malformed_input_exits_with_three() {
    for args in [
        &["admissible", "--example", "4.1"][..],
        &["admissible", "--example", "9.9", "--beta", "1"],
        &["admissible", "--psi", "1, 2", "--q", "disk(1,0)", "--omega", "disk(0,2)", "--beta", "1"],
        &["admissible", "--psi", "0,1,0,1,1", "--q", "disk(1,", "--omega", "disk(0,2)", "--beta", "1"],
        &["order", "--theorem", "5.3", "--sweep", "0:1"],
        &["order", "--theorem", "5.3", "--a2", "3"],
        &["lemma", "--which", "nonsense"],
        &["no-such-command"],
        &["--trials", "0", "lemma", "--which", "schwarz"],
    ] {
        let (code, out) = subord(args);
        assert_eq!(code, EXIT_MALFORMED, "{args:?}: {out}");
    }
}

#[test]
fn help_exits_cleanly() {
    let (code, out) = subord(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("reproduce"));
}

#[test]
fn config_file_overrides_flags_and_report_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::File::create(&cfg).unwrap().write_all(b"samples = 20\nseed = 5\n").unwrap();
    let report = dir.path().join("report.json");
    let (code, out) = subord(&[
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "70",
        "--output",
        report.to_str().unwrap(),
        "falsify",
        "--example",
        "4.1",
        "--n",
        "1",
        "--beta",
        "1",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("samples: 20 "), "{out}");
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["config"]["samples"], 20);
    assert_eq!(json["config"]["seed"], 5);
    assert!(json["config"].get("output").is_none());
}

#[test]
fn bad_config_file_is_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    let (code, out) = subord(&["--config", cfg.to_str().unwrap(), "order", "--theorem", "5.1"]);
    assert_eq!(code, EXIT_MALFORMED, "{out}");
    let (code, _) = subord(&["--config", "/nonexistent/run.toml", "order", "--theorem", "5.1"]);
    assert_eq!(code, EXIT_MALFORMED);
}
