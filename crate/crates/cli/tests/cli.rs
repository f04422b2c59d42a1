use std::process::{Command, Output};

use gausscat::superposition::build_descriptor;
use gausscat::wavefunc::psi_cat_p;
use gausscat::{CoprimeFraction, KittenDescriptor, C64};

fn gausscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gausscat"))
        .args(args)
        .output()
        .expect("spawn gausscat")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn coeffs_parity_cat_phases() {
    let out = gausscat(&["coeffs", "1", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("exp(i·7π/4)/√2"), "{text}");
    assert!(text.contains("exp(i·π/4)/√2"), "{text}");
}

#[test]
fn coeffs_pentagonal_rows_match_closed_form() {
    let out = gausscat(&["coeffs", "1", "5", "--format", "csv"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 5);
    // total phases in units of π: -1/5, -1/5, 1/5, -1, 1/5
    let expected = [-0.2, -0.2, 0.2, -1.0, 0.2];
    for (row, phase) in rows.iter().zip(expected) {
        let re: f64 = row[5].parse().unwrap();
        let im: f64 = row[6].parse().unwrap();
        let want = C64::from_polar(1.0 / 5f64.sqrt(), std::f64::consts::PI * phase);
        assert!((C64::new(re, im) - want).norm() < 1e-12, "{row:?}");
        assert_eq!(row[4], "5");
    }
}

#[test]
fn non_coprime_is_usage_error() {
    let out = gausscat(&["coeffs", "2", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("gcd = 2"), "{err}");
}

#[test]
fn out_of_range_and_bad_flags_are_usage_errors() {
    assert_eq!(gausscat(&["state", "5", "3"]).status.code(), Some(2));
    assert_eq!(
        gausscat(&["verify", "--only", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gausscat(&["evolve", "1", "2", "--steps", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn state_json_round_trips() {
    for (m, n) in [(1, 3), (3, 4), (2, 7), (5, 12)] {
        let out = gausscat(&["state", &m.to_string(), &n.to_string(), "--format", "json"]);
        assert!(out.status.success());
        let text = stdout(&out);
        let parsed: KittenDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(
            parsed,
            build_descriptor(CoprimeFraction::new(m, n).unwrap())
        );
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    }
}

#[test]
fn trigonal_state_phases() {
    let out = gausscat(&["state", "1", "3", "--format", "json"]);
    let d: KittenDescriptor = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(d.components.len(), 3);
    let phases: Vec<f64> = d
        .components
        .iter()
        .map(|c| {
            c.coefficient.total_phase().signed_num() as f64
                / c.coefficient.total_phase().den() as f64
        })
        .collect();
    assert_eq!(phases, vec![-1.0 / 6.0, -1.0 / 6.0, 0.5]);
}

#[test]
fn yurke_stoler_flag_rotates_alpha() {
    let out = gausscat(&["state", "1", "2", "--yurke-stoler"]);
    let d: KittenDescriptor = serde_json::from_str(&stdout(&out)).unwrap();
    let rotations: Vec<(i64, i64)> = d
        .components
        .iter()
        .map(|c| (c.rotation.num(), c.rotation.den()))
        .collect();
    assert_eq!(rotations, vec![(0, 1), (1, 1)]);
}

#[test]
fn wavefunction_matches_parity_cat() {
    let out = gausscat(&["wavefunction", "1", "2", "--alpha", "1,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("x,re_psi,im_psi,abs2"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 2001);
    let alpha = C64::new(1.0, 0.0);
    let mut norm = 0.0;
    let h = 24.0 / 2000.0;
    for (i, row) in rows.iter().enumerate() {
        let v: Vec<f64> = row.iter().map(|s| s.parse().unwrap()).collect();
        let err = (C64::new(v[1], v[2]) - psi_cat_p(alpha, v[0])).norm();
        assert!(err <= 1e-9, "x = {}: {err}", v[0]);
        let w = if i == 0 || i == 2000 { 0.5 } else { 1.0 };
        norm += w * h * v[3];
    }
    assert!((norm - 1.0).abs() <= 1e-6, "{norm}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("trapezoid norm"));
}

#[test]
fn wavefunction_at_zero_alpha_is_scaled_ground_state() {
    let out = gausscat(&[
        "wavefunction",
        "1",
        "3",
        "--alpha",
        "0,0",
        "--points",
        "11",
        "--half-width",
        "3",
    ]);
    assert!(out.status.success());
    let f = CoprimeFraction::new(1, 3).unwrap();
    let scale: C64 = build_descriptor(f).coefficient_values().iter().sum();
    for row in csv_rows(&stdout(&out)) {
        let v: Vec<f64> = row.iter().map(|s| s.parse().unwrap()).collect();
        let ground = std::f64::consts::PI.powf(-0.25) * (-v[0] * v[0] / 2.0).exp();
        assert!((C64::new(v[1], v[2]) - scale * ground).norm() < 1e-12);
    }
}

#[test]
fn truncation_guard_names_required_dim() {
    let out = gausscat(&["wavefunction", "1", "2", "--alpha", "9,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("dim >="), "{err}");
    assert!(!gausscat(&["evolve", "1", "2", "--alpha", "-9,0"])
        .status
        .success());
}

#[test]
fn evolve_fidelity_is_one() {
    let out = gausscat(&[
        "evolve",
        "3",
        "4",
        "--alpha",
        "1,0",
        "--t",
        "6.283185307179586",
        "--steps",
        "8",
    ]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 9);
    assert_eq!(
        rows[0],
        vec!["0.0000000000000000e0", "1.0000000000000000e0"]
    );
    for row in rows {
        let fid: f64 = row[1].parse().unwrap();
        assert!((fid - 1.0).abs() <= 1e-9);
    }
    let vacuum = gausscat(&["evolve", "1", "5", "--alpha", "0,0", "--steps", "5"]);
    for row in csv_rows(&stdout(&vacuum)) {
        assert_eq!(row[1].parse::<f64>().unwrap(), 1.0);
    }
}

#[test]
fn verify_only_gauss() {
    let out = gausscat(&["verify", "--only", "gauss"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let checks: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .collect();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|l| l.starts_with("PASS gauss")), "{text}");

    let json = gausscat(&["verify", "--only", "dft", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["coeffs", "7", "12", "--format", "json"][..],
        &["state", "3", "11", "--format", "text", "--by-angle"][..],
        &[
            "wavefunction",
            "2",
            "5",
            "--alpha",
            "1.5,0.5",
            "--points",
            "201",
        ][..],
        &["evolve", "1", "6", "--alpha", "0.5,-1", "--steps", "7"][..],
    ] {
        let a = gausscat(args);
        let b = gausscat(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
