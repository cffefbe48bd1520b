//! End-to-end tests of the `gsn` binary: flag contracts, exit codes and
//! byte-determinism of machine-readable output.

use std::process::{Command, Output};

fn gsn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsn"))
        .args(args)
        .env_remove("GSN_FORMAT")
        .output()
        .expect("binary runs")
}

fn gsn_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsn"))
        .args(args)
        .env_remove("GSN_FORMAT")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const BENCH: &[&str] = &[
    "--s0", "100", "--strike", "100", "--rate", "0.1", "--variance", "0.4", "--maturity", "0.25",
];

#[test]
fn price_benchmark_black_scholes_cell() {
    let out = gsn(&[&["price"], BENCH, &["--lambda", "0", "--gamma", "0"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("call     13.68113491839323"), "{text}");
    assert!(text.contains("method   general"));
}

#[test]
fn price_skewed_cell_matches_published_value() {
    let out = gsn(&[&["price"], BENCH, &["--lambda", "2", "--gamma", "-1"]].concat());
    let text = stdout(&out);
    let call: f64 = text
        .lines()
        .find(|l| l.starts_with("call"))
        .unwrap()
        .split_whitespace()
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((call - 9.406439).abs() < 1e-3, "{call}");
}

#[test]
fn sigma_and_variance_agree() {
    let sigma_out = gsn(&[
        "price", "--s0", "100", "--strike", "100", "--rate", "0.1", "--sigma", "0.6324555",
        "--maturity", "0.25", "--lambda", "1", "--gamma", "1", "--format", "csv",
    ]);
    let var_out = gsn(&[&["price"], BENCH, &["--lambda", "1", "--gamma", "1", "--format", "csv"]].concat());
    let parse = |o: &Output| -> f64 {
        stdout(o).lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap()
    };
    assert!((parse(&sigma_out) - parse(&var_out)).abs() < 1e-5);
}

#[test]
fn usage_errors_exit_2() {
    // Missing required flag.
    let out = gsn(&["price", "--s0", "100"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown flag.
    let out = gsn(&[&["price"], BENCH, &["--lambda", "0", "--gamma", "0", "--bogus", "1"]].concat());
    assert_eq!(out.status.code(), Some(2));
    // sigma and variance together.
    let out = gsn(&[
        "price", "--s0", "100", "--strike", "100", "--rate", "0.1", "--sigma", "0.6",
        "--variance", "0.4", "--maturity", "0.25", "--lambda", "0", "--gamma", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Invalid domain (negative spot) also reads as usage.
    let out = gsn(&[
        "price", "--s0", "-5", "--strike", "100", "--rate", "0.1", "--variance", "0.4",
        "--maturity", "0.25", "--lambda", "0", "--gamma", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table1_passes_and_is_byte_deterministic() {
    let a = gsn(&["table1", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    let b = gsn(&["table1", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 26);
    assert!(text.starts_with("lambda,gamma,computed,reference,abs_deviation"));
}

#[test]
fn table1_flip_hook_fails_loudly() {
    let out = gsn(&["table1", "--flip-correlation-sign"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn mc_is_reproducible_and_converges() {
    let args = [
        &["mc"][..],
        BENCH,
        &["--lambda", "1", "--gamma", "1", "--paths", "100000", "--seed", "7", "--format", "csv"],
    ]
    .concat();
    let a = gsn(&args);
    assert_eq!(a.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&a.stderr));
    let b = gsn(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mc_rejects_small_path_counts() {
    let args = [&["mc"][..], BENCH, &["--lambda", "0", "--gamma", "0", "--paths", "500", "--seed", "1"]].concat();
    let out = gsn(&args);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parity_check_passes() {
    let args = [&["parity-check"][..], BENCH, &["--lambda", "-2", "--gamma", "1.5"]].concat();
    let out = gsn(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("residual"));
}

#[test]
fn grid_csv_structure() {
    let args = [
        &["grid"][..],
        BENCH,
        &["--lambda-axis", "-1,0,1", "--gamma-axis", "-1,0,1", "--format", "csv"],
    ]
    .concat();
    let out = gsn(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    assert!(text.starts_with("lambda,gamma,call,put,w,mu_star"));
}

#[test]
fn grid_json_parses_and_format_env_is_honored() {
    let args = [
        &["grid"][..],
        BENCH,
        &["--lambda-axis", "0", "--gamma-axis", "-5,0,5"],
    ]
    .concat();
    let out = gsn_with_env(&args, "GSN_FORMAT", "json");
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    // λ=0 row: price independent of γ.
    let c0 = rows[0]["call"].as_f64().unwrap();
    for row in rows {
        assert!((row["call"].as_f64().unwrap() - c0).abs() < 1e-10);
    }
}

#[test]
fn grid_plot_format_emits_series() {
    let args = [
        &["grid"][..],
        BENCH,
        &["--lambda-axis", "-1,0,1", "--gamma-axis", "-1,1", "--format", "plot"],
    ]
    .concat();
    let out = gsn(&args);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("# series gamma=")).count(), 2);
}

#[test]
fn grid_writes_file() {
    let dir = std::env::temp_dir().join(format!("gsn-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.csv");
    let path_str = path.to_str().unwrap();
    let args = [
        &["grid"][..],
        BENCH,
        &["--lambda-axis", "0,1", "--gamma-axis", "0", "--format", "csv", "--out", path_str],
    ]
    .concat();
    let out = gsn(&args);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 3);
    std::fs::remove_dir_all(&dir).ok();
}
