//! End-to-end behaviour of the binary: exit codes, deterministic output,
//! CSV/JSON layout and the sentinel encoding.

use std::process::{Command, Output};

fn zeromode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeromode"))
        .args(args)
        .output()
        .expect("failed to launch binary")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn fig1_csv_layout_and_determinism() {
    let a = zeromode(&["fig1", "--grid", "1e-4:1:50:geom"]);
    let b = zeromode(&["fig1", "--grid", "1e-4:1:50:geom"]);
    assert!(a.status.success());
    assert_eq!(
        a.stdout, b.stdout,
        "identical flags must give byte-identical output"
    );

    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,s"));
    assert_eq!(text.lines().count(), 51);
    // last row is the decoupled point
    let last = text.lines().last().unwrap();
    assert_eq!(last, "1.0000000000000000e0,0.0000000000000000e0");
}

#[test]
fn divergent_rows_encode_as_inf() {
    let out = zeromode(&["fig1", "--grid", "0:1:3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first_row = text.lines().nth(1).unwrap();
    assert_eq!(first_row, "0.0000000000000000e0,inf");
}

#[test]
fn json_output_carries_meta_and_rows() {
    let out = zeromode(&[
        "fig3",
        "--format",
        "json",
        "--grid",
        "0:4:9",
        "--zetas",
        "1e-1,1e-3",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["meta"]["subject"], "hydrogen_entropy_integrand");
    assert_eq!(parsed["meta"]["eta"], 1.0);
    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 18);
    // entropy must be larger for the smaller zeta
    let s_large_zeta = rows[0]["s"].as_f64().unwrap();
    let s_small_zeta = rows[9]["s"].as_f64().unwrap();
    assert!(s_small_zeta > s_large_zeta);
    // g(0) = 0 for every zeta
    assert_eq!(rows[0]["g"].as_f64().unwrap(), 0.0);
    assert_eq!(rows[9]["g"].as_f64().unwrap(), 0.0);
}

#[test]
fn fig2_matches_the_log_ratio_curve() {
    let out = zeromode(&["fig2", "--grid", "0.36787944117144233:1:2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let s: f64 = first[1].parse().unwrap();
    assert!((s - std::f64::consts::SQRT_2).abs() < 1e-12, "S(1/e) = {s}");
}

#[test]
fn fig4_flags_the_expansion_window() {
    let out = zeromode(&["fig4", "--grid", "0:0.5:6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let eps: f64 = cells[0].parse().unwrap();
        let flag: u32 = cells[2].parse().unwrap();
        assert_eq!(flag == 1, eps > 0.2, "eps = {eps}");
    }
}

#[test]
fn lattice_mu_one_reports_zero_mode_divergence() {
    let out = zeromode(&["lattice-sweep", "--sites", "8", "--grid", "0.9:1:3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last[2], "1", "mu = 1 must have one zero-mode");
    assert_eq!(
        last[3], "inf",
        "mu = 1 entropy must be the divergent sentinel"
    );
}

#[test]
fn tripartite_sweep_reports_regimes() {
    let out = zeromode(&["tripartite-sweep", "--grid", "1e-4:1e-1:4:geom"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        assert!(
            line.contains(",normal,"),
            "expected normal regime rows: {line}"
        );
    }
}

#[test]
fn usage_errors_exit_with_code_2() {
    // malformed grid (equal endpoints)
    let out = zeromode(&["fig1", "--grid", "1:1:5"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag, rejected by the parser itself
    let out = zeromode(&["fig1", "--does-not-exist"]);
    assert_eq!(out.status.code(), Some(2));
    // missing subcommand
    let out = zeromode(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_errors_exit_with_code_3() {
    // R beyond 1 is outside the closed form's domain
    let out = zeromode(&["fig1", "--grid", "0.5:2:4"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("numeric error"), "stderr: {err}");
}

#[test]
fn io_errors_carry_path_context() {
    let out = zeromode(&[
        "fig1",
        "--grid",
        "0.5:1:3",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("/nonexistent-dir/x.csv"), "stderr: {err}");
}

#[test]
fn oracle_report_schema() {
    let dir = std::env::temp_dir().join("zeromode-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = zeromode(&["oracle", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());

    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["version", "checks", "failures"] {
        assert!(!parsed["meta"][key].is_null(), "meta.{key} missing");
    }
    for check in parsed["checks"].as_array().unwrap() {
        for key in ["name", "status", "measured", "tolerance"] {
            assert!(!check[key].is_null(), "check.{key} missing in {check}");
        }
        let status = check["status"].as_str().unwrap();
        assert!(matches!(status, "pass" | "fail" | "divergent-as-expected"));
    }

    // one line per check plus the summary line on stdout
    let lines = stdout(&out);
    let n_checks = parsed["meta"]["checks"].as_u64().unwrap() as usize;
    assert_eq!(lines.lines().count(), n_checks + 1);
}
