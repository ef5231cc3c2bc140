use std::process::{Command, Output};

fn torusq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torusq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn quantize_reports_n() {
    let out = torusq(&["quantize", "--a", "2", "--b", "3", "--h", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "N = 6");
}

#[test]
fn quantize_tolerates_rounding() {
    let a = 2f64.sqrt();
    let arg = a.to_string();
    let out = torusq(&["quantize", "--a", &arg, "--b", &arg, "--h", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "N = 2");
}

#[test]
fn non_quantized_prints_holonomy() {
    let out = torusq(&["quantize", "--a", "1", "--b", "0.5", "--h", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("not quantized"), "{text}");
    assert!(text.contains("holonomy = -1+0i"), "{text}");
}

#[test]
fn quantize_json_report() {
    let out = torusq(&["quantize", "--a", "1", "--b", "2.25", "--h", "1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["overall_pass"], false);
    let check = &v["checks"][0];
    assert_eq!(check["check"], "quantize.area");
    assert_eq!(check["pass"], false);
    let hol = check["params"]["holonomy"].as_array().unwrap();
    // e^{2πi·2.25} = i
    assert!(hol[0].as_f64().unwrap().abs() < 1e-12);
    assert!((hol[1].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["timestamp"].is_string());
}

#[test]
fn invalid_geometry_is_usage_error() {
    for args in [
        &["quantize", "--a", "-1", "--b", "1", "--h", "1"][..],
        &["quantize", "--a", "1", "--b", "0", "--h", "1"][..],
        &["quantize", "--a", "1", "--b", "1", "--h", "nan"][..],
        &["quantize", "--a", "1", "--b", "1"][..],
    ] {
        let out = torusq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains("Usage"), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn verify_single_suite() {
    let out = torusq(&["verify", "--N", "3", "--suite", "weyl"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("weyl.commutation"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json_lists_every_check() {
    let out = torusq(&["verify", "--N", "2", "--suite", "dft", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert!(checks.iter().any(|c| c["check"] == "dft.oracle"));
    assert_eq!(v["geometry"]["N"], 2);
}

#[test]
fn verify_from_periods() {
    let out = torusq(&[
        "verify",
        "--a",
        "2",
        "--b",
        "1.5",
        "--h",
        "1",
        "--suite",
        "orthonormality",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn verify_rejects_bad_input() {
    for args in [
        &["verify", "--N", "0"][..],
        &["verify", "--N", "2", "--suite", "nope"][..],
        &["verify", "--a", "1", "--b", "0.5"][..],
        &["verify", "--N", "3", "--M", "10"][..],
        &["verify", "--N", "2", "--a", "1", "--b", "3"][..],
    ] {
        assert_eq!(torusq(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_fails_with_tiny_tolerance() {
    let out = torusq(&[
        "verify",
        "--N",
        "3",
        "--suite",
        "weyl",
        "--tolerance",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|line| line.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn dump_q_basis_n1() {
    let out = torusq(&[
        "dump", "qbasis", "--N", "1", "--n", "0", "--m", "0", "--M", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("i,j,q,p,re,im"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 16);
    for row in rows {
        // a = b = h = 1: e^{2πi pq}
        let z = num_complex::Complex64::cis(std::f64::consts::TAU * row[2] * row[3]);
        assert!((row[4] - z.re).abs() < 1e-12 && (row[5] - z.im).abs() < 1e-12);
    }
}

#[test]
fn dump_p_basis_zero_is_constant() {
    let out = torusq(&[
        "dump", "pbasis", "--N", "2", "--n", "0", "--m", "0", "--M", "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 64);
    assert!(rows.iter().all(|r| r[4] == 1.0 && r[5] == 0.0));
}

#[test]
fn dump_label_range() {
    let args = [
        "dump", "qbasis", "--N", "2", "--n", "5", "--m", "0", "--M", "8",
    ];
    assert_eq!(torusq(&args).status.code(), Some(2));
    let mut reduced = args.to_vec();
    reduced.push("--reduce");
    let out = torusq(&reduced);
    assert_eq!(out.status.code(), Some(0));
    let want = torusq(&[
        "dump", "qbasis", "--N", "2", "--n", "1", "--m", "0", "--M", "8",
    ]);
    assert_eq!(out.stdout, want.stdout);
}

#[test]
fn dump_to_file() {
    let path = std::env::temp_dir().join(format!("torusq-dump-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = torusq(&[
        "dump", "pbasis", "--N", "1", "--n", "0", "--m", "0", "--M", "2", "--out", p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn dump_grid_must_be_multiple_of_n() {
    let out = torusq(&[
        "dump", "qbasis", "--N", "3", "--n", "0", "--m", "0", "--M", "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
