//! End-to-end tests of the `entmono` binary: exit codes, output formats,
//! determinism, and the state-file interface.

use std::path::PathBuf;
use std::process::{Command, Output};

use entmono_core::states::{sigma_gamma_state, SigmaGammaParams};

fn entmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entmono"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("entmono-cli-{}-{name}", std::process::id()))
}

fn write_sigma_state_file(gamma: f64, name: &str) -> PathBuf {
    let params = SigmaGammaParams::new(gamma).unwrap();
    let rho = sigma_gamma_state(&params);
    let entries: Vec<String> = rho
        .matrix()
        .data()
        .iter()
        .map(|z| format!("[{:.17e},{:.17e}]", z.re, z.im))
        .collect();
    let json = format!(r#"{{"dims":[2,2,2],"matrix":[{}]}}"#, entries.join(","));
    let path = temp_path(name);
    std::fs::write(&path, json).unwrap();
    path
}

#[test]
fn reproduce_paper_confirms_the_claims() {
    let out = entmono(&["reproduce-paper"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let table = stdout(&out);
    assert!(table.contains("0.900000"));
    assert!(table.contains("true"));
    assert!(table.contains("false"));
}

#[test]
fn reproduce_paper_csv_is_byte_identical_across_runs() {
    let a = entmono(&["reproduce-paper", "--format", "csv", "--seed", "7"]);
    let b = entmono(&["reproduce-paper", "--format", "csv", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "CSV output must be deterministic per seed");

    let text = stdout(&a);
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "gamma,alpha,F_1_23,F_13,f_1_23,f_13,C_13,fef_violated,fid_violated,strictness_proxy,F_1_23_exact,F_13_exact,f_1_23_exact,f_13_exact,C_13_exact,error"
    );
    assert_eq!(text.lines().count(), 11, "header plus ten grid rows");

    // The γ=0.9 row carries the exact fractions next to the floats.
    let row9 = text.lines().find(|l| l.starts_with("9.0000")).unwrap();
    assert!(row9.contains("32/35"), "row: {row9}");
    assert!(row9.contains("33/35"), "row: {row9}");
    assert!(row9.contains("29/35"), "row: {row9}");
}

#[test]
fn out_file_matches_stdout_format() {
    let path = temp_path("table.csv");
    let piped = entmono(&["reproduce-paper", "--format", "csv", "--seed", "3"]);
    let filed = entmono(&["reproduce-paper", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(filed.status.code(), Some(0));
    let file_contents = std::fs::read(&path).unwrap();
    assert_eq!(file_contents, piped.stdout);
    // Human table still lands on stdout alongside the file.
    assert!(stdout(&filed).contains("gamma"));
    std::fs::remove_file(path).ok();
}

#[test]
fn sweep_validates_its_grid() {
    let out = entmono(&["sweep", "--gamma-min", "0.9", "--gamma-max", "0.5", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(64));
    let out = entmono(&["sweep", "--gamma-min", "0.0", "--gamma-max", "1.5", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(64));
    let out = entmono(&["sweep", "--gamma-min", "0.5", "--gamma-max", "0.9", "--steps", "0"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn sweep_emits_requested_grid() {
    let out = entmono(&["sweep", "--gamma-min", "0.5", "--gamma-max", "0.9", "--steps", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["gamma"], 0.7);
    assert_eq!(rows[0]["fef_violated"], true);
    assert_eq!(rows[2]["F_13_exact"], "32/35");
}

#[test]
fn check_command_contract() {
    let out = entmono(&["check", "--qubits", "3", "--trials", "25", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("concurrence"));
    assert!(text.contains("fidelity"));

    let out = entmono(&["check", "--qubits", "4", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0));

    let out = entmono(&["check", "--qubits", "3", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(64));
    let out = entmono(&["check", "--qubits", "6", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn fef_on_sigma_state_file() {
    let path = write_sigma_state_file(0.9, "sigma09.json");
    let out = entmono(&["fef", "--state", path.to_str().unwrap(), "--dims", "2,4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("fef         0.900000"), "output: {text}");
    std::fs::remove_file(path).ok();
}

#[test]
fn fef_on_pure_state_file_with_closed_form() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let path = temp_path("phiplus.json");
    std::fs::write(
        &path,
        format!(r#"{{"dims":[2,2],"amplitudes":[[{s},0.0],[0.0,0.0],[0.0,0.0],[{s},0.0]]}}"#),
    )
    .unwrap();
    let out = entmono(&["fef", "--state", path.to_str().unwrap(), "--dims", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("fef         1.000000"), "output: {text}");
    assert!(text.contains("closed_form 1.000000"), "output: {text}");
    std::fs::remove_file(path).ok();
}

#[test]
fn fef_error_contracts() {
    let path = temp_path("malformed.json");
    std::fs::write(&path, "{this is not json").unwrap();
    let out = entmono(&["fef", "--state", path.to_str().unwrap(), "--dims", "2,4"]);
    assert_eq!(out.status.code(), Some(65));
    std::fs::remove_file(path).ok();

    // Valid JSON, invalid density operator: the trace invariant is named.
    let path = temp_path("badtrace.json");
    std::fs::write(
        &path,
        r#"{"dims":[2],"matrix":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]}"#,
    )
    .unwrap();
    let out = entmono(&["fef", "--state", path.to_str().unwrap(), "--dims", "2,2"]);
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trace"));
    std::fs::remove_file(path).ok();

    let out = entmono(&["fef", "--state", "/nonexistent.json", "--dims", "2,4"]);
    assert_eq!(out.status.code(), Some(65));

    let path = write_sigma_state_file(0.5, "sigma05.json");
    let out = entmono(&["fef", "--state", path.to_str().unwrap(), "--dims", "3,3"]);
    assert_eq!(out.status.code(), Some(64), "dims outside 2xd are a usage error");
    std::fs::remove_file(path).ok();
}

#[test]
fn telesim_contract() {
    let out = entmono(&["telesim", "--gamma", "0.9", "--samples", "1000", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("exact       0.942857"), "output: {text}");
    assert!(text.contains("consistent  true"), "output: {text}");

    let out = entmono(&["telesim", "--gamma", "1.0", "--samples", "500"]);
    assert!(stdout(&out).contains("exact       1.000000"));

    // γ = 1/8: all weights equal, the channel state is I/4 and f = 1/2.
    let out = entmono(&["telesim", "--gamma", "0.125", "--samples", "500"]);
    assert!(stdout(&out).contains("exact       0.500000"));

    let out = entmono(&["telesim", "--gamma", "0.9", "--samples", "99"]);
    assert_eq!(out.status.code(), Some(64));
    let out = entmono(&["telesim", "--gamma", "1.5", "--samples", "500"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn usage_errors_exit_64() {
    let out = entmono(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(64));
    let out = entmono(&[]);
    assert_eq!(out.status.code(), Some(64));
}
