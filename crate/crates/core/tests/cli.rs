//! End-to-end tests of the compiled binary: output shape, determinism and
//! exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zeromode"))
}

#[test]
fn theta_csv_row() {
    let out = bin()
        .args(["theta", "--R", "1", "--x", "0.5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "quantity,R,x_re,x_im,value_re,value_im"
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("theta1,1,0.5,0,"), "row: {first}");
    // Frozen from an independent arbitrary-precision evaluation.
    let val: f64 = first.split(',').nth(4).unwrap().parse().unwrap();
    assert!((val - 0.43547815754614333).abs() < 1e-12, "theta1 value {val}");
}

#[test]
fn json_output_shape() {
    let out = bin()
        .args(["poisson", "--alpha", "1", "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "poisson");
    assert!(v["columns"].as_array().unwrap().len() == 4);
    assert!(v["rows"].as_array().unwrap().len() == 1);
}

#[test]
fn fourier_pair_commands_agree() {
    for args in [
        vec!["lemma411", "--x0", "1.5707963267948966", "--R", "1", "--p", "0.5"],
        vec!["lemma421", "--R", "1", "--p", "0.7"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert!(out.status.success(), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let data = text.lines().nth(1).unwrap();
        let cols: Vec<&str> = data.split(',').collect();
        // rel_error column sits third from the end.
        let rel: f64 = cols[cols.len() - 2].parse().unwrap();
        assert!(rel < 1e-8, "{args:?}: rel {rel}");
    }
}

#[test]
fn invalid_arguments_exit_one() {
    let out = bin().args(["theta"]).output().unwrap(); // missing --R
    assert_eq!(out.status.code(), Some(1));

    let out = bin()
        .args(["positivity", "--R-scan", "5:1:10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin().args(["nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn positivity_scan_and_exit_zero() {
    let out = bin()
        .args(["positivity", "--R-scan", "0.5:2:4", "--grid-points", "50"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5); // header + 4 radii
    for line in text.lines().skip(1) {
        assert!(line.contains("true"), "direct check row: {line}");
    }
}

#[test]
fn verify_suite_deterministic_bytes() {
    let run = || {
        bin()
            .args(["verify", "--suite", "lemmas", "--tol", "1e-8"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0), "lemma suite should pass");
    assert_eq!(a.stdout, b.stdout, "verify output must be byte-identical");
}

#[test]
fn spectrum_command_reports_gap() {
    let out = bin()
        .args([
            "spectrum",
            "--level",
            "0",
            "--parity",
            "odd",
            "--r-max",
            "30",
            "--grid-points",
            "3000",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let gap_line = text
        .lines()
        .find(|l| l.starts_with("mass_gap,"))
        .expect("mass gap row");
    let gap: f64 = gap_line.split(',').last().unwrap().parse().unwrap();
    assert!((gap - 0.25).abs() < 1e-5, "gap {gap}");
}

#[test]
fn scatter_reflectionless() {
    let out = bin()
        .args(["scatter", "--k", "1", "--depth", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let val: f64 = text.lines().nth(1).unwrap().split(',').last().unwrap().parse().unwrap();
    assert!(val < 1e-6, "|R| = {val}");
}

#[test]
fn probe_qr_carries_open_question_flag() {
    let out = bin()
        .args(["probe-qr", "--R", "1", "--r", "5", "--r", "10", "--r", "20"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("open_question"));
    for line in text.lines().skip(1) {
        assert!(line.ends_with("true"), "row missing flag: {line}");
    }
}

#[test]
fn out_file_writing() {
    let dir = std::env::temp_dir().join("zeromode-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poisson.csv");
    let out = bin()
        .args(["poisson", "--alpha", "2", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("alpha,"));
    std::fs::remove_file(&path).ok();
}
