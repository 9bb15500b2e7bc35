use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, Output};

use serde_json::Value;

use selfspec::{make_boundary, numeric_zeta_prime_zero};

fn selfspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfspec")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = selfspec(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn assert_header(v: &Value) {
    for key in ["schema_version", "bc", "L", "class"] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--bc", "dirichlet", "--length", "1"]);
    assert_header(&v);
    assert_eq!(v["rows"][0]["class"], "DirichletPoint");
    assert_eq!(v["rows"][0]["zero_modes"], 0);

    let v = json(&["classify", "--bc", "vnk", "--length", "2"]);
    assert_eq!(v["class"], "VNK");
    assert_eq!(v["rows"][0]["zero_modes"], 2);

    let v = json(&["classify", "--alpha", "0.3", "--beta", "-0.3", "--n1", "1", "--length", "1"]);
    assert_eq!(v["rows"][0]["class"], "ZeroModeLine");
    assert_eq!(v["rows"][0]["zero_modes"], 1);
    assert_eq!(v["rows"][0]["strongly_consistent"], true);
}

#[test]
fn periodic_determinant_at_unit_length() {
    let v = json(&["det", "--bc", "periodic", "--length", "1"]);
    assert_header(&v);
    assert_eq!(num(&v["rows"][0]["zeta_prime_0"]), 0.0);
    assert_eq!(num(&v["rows"][0]["determinant"]), 1.0);
}

#[test]
#[allow(clippy::approx_constant)]
fn robin_heat_table() {
    let v = json(&["heat", "--bc", "robin:1.0472", "--length", "1", "--max-order", "4"]);
    assert_header(&v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let a32 = rows.iter().find(|r| r["order"] == "3/2").expect("a_{3/2} row");
    let expected = (1.0472f64 / 2.0).tan().powi(2);
    assert!((num(&a32["coefficient"]) - expected).abs() < 1e-14);
    assert!((num(&a32["coefficient"]) - 1.0 / 3.0).abs() < 1e-4);
}

#[test]
#[allow(clippy::approx_constant)]
fn neumann_spectrum_includes_zero_mode() {
    let length = 3.1415926535f64;
    let v = json(&["spectrum", "--bc", "neumann", "--length", "3.1415926535", "--kmax", "5.5"]);
    assert_header(&v);
    let rows = v["rows"].as_array().unwrap();
    let lambdas: Vec<f64> = rows.iter().map(|r| num(&r["lambda"])).collect();
    assert_eq!(lambdas.len(), 6);
    assert_eq!(rows[0]["kind"], "zero");
    for (n, l) in lambdas.iter().enumerate() {
        let exact = (n as f64 * PI / length).powi(2);
        assert!((l - exact).abs() <= 1e-10 * exact.max(1.0), "{n}: {l}");
        assert!((l - (n * n) as f64).abs() < 1e-8);
    }
}

#[test]
fn sweep_grid() {
    let v = json(&["sweep", "--resolution", "101", "--n1", "1", "--length", "1"]);
    assert_header(&v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 101 * 101);
    let mut generic_cell = None;
    for r in rows {
        let (a, b) = (num(&r["alpha"]), num(&r["beta"]));
        let margin = (a - b).min(a + b).min(PI - a - b).min(PI - a + b);
        let consistent = r["strongly_consistent"].as_bool().unwrap();
        if margin > 1e-9 {
            assert!(consistent, "({a}, {b}) is inside the rhombus");
        } else if margin < -1e-9 {
            assert!(!consistent, "({a}, {b}) is outside the rhombus");
        }
        let on_line = (b + a).abs() < 1e-12 && a <= FRAC_PI_2 + 1e-12;
        if consistent {
            assert_eq!(r["zero_modes"], if on_line { 1 } else { 0 }, "({a}, {b})");
        }
        if (a - FRAC_PI_2).abs() < 1e-12 && b.abs() < 1e-12 {
            generic_cell = Some(r.clone());
        }
    }
    let cell = generic_cell.expect("grid contains (pi/2, 0)");
    assert_eq!(cell["class"], "Generic");
    // independent check against the numerical continuation
    let bc = make_boundary(FRAC_PI_2, 0.0, [1.0, 0.0, 0.0]).unwrap();
    let numeric = numeric_zeta_prime_zero(&bc, 1.0).unwrap();
    assert!((num(&cell["zeta_prime_0"]) - numeric).abs() < 1e-6, "{cell} vs {numeric}");
}

#[test]
fn sweep_output_is_independent_of_threads() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_selfspec"))
            .args(["sweep", "--resolution", "41", "--n1", "-1", "--format", "csv"])
            .env("SELFSPEC_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn identical_configs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let args = |path: &str| {
        vec![
            "zeta".to_string(),
            "--alpha".into(),
            "2.0".into(),
            "--beta".into(),
            "0.4".into(),
            "--n1".into(),
            "0.5".into(),
            "--length".into(),
            "1.3".into(),
            "--s".into(),
            "0.75,-0.3".into(),
            "--out".into(),
            path.into(),
        ]
    };
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    for p in [&p1, &p2] {
        let out = Command::new(env!("CARGO_BIN_EXE_selfspec"))
            .args(args(p.to_str().unwrap()))
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_header(&v);
    assert_eq!(v["class"], "Generic");
}

#[test]
fn csv_carries_header_and_fixed_columns() {
    let out = selfspec(&["det", "--bc", "dirichlet", "--length", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    assert_header(&header);
    assert_eq!(lines.next(), Some("method,zeta_prime_0,determinant"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "closed_form");
    assert_eq!(row[1].parse::<f64>().unwrap(), -(4.0f64).ln());
}

#[test]
fn exit_codes() {
    assert_eq!(selfspec(&["classify", "--alpha", "0.3"]).status.code(), Some(2));
    assert_eq!(selfspec(&["classify", "--bc", "dirichlet", "--length", "-1"]).status.code(), Some(2));
    assert_eq!(selfspec(&["classify", "--bc", "robin:4"]).status.code(), Some(2));
    assert_eq!(selfspec(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(selfspec(&["--help"]).status.code(), Some(0));
    // orders above the cap are input errors
    assert_eq!(selfspec(&["heat", "--bc", "dirichlet", "--max-order", "31"]).status.code(), Some(2));
}

#[test]
fn verify_filter_and_fault() {
    let out = selfspec(&["verify", "--only", "det"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_header(&v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["id"], "det");
    assert_eq!(rows[0]["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("[PASS] det"));

    let out = selfspec(&["verify", "--only", "ht-2", "--inject-fault", "flip-a1-sign"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(selfspec(&["verify", "--only", "nothing"]).status.code(), Some(2));
}
