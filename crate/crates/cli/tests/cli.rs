use std::process::{Command, Output};

use finfourier::polyfamilies::FamilySpec;
use finfourier::transforms::hat;
use finfourier_cli::output::CSV_HEADER;

fn finfourier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finfourier"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
    r.records().map(Result::unwrap).collect()
}

#[test]
fn legendre_forms_agree_at_pi() {
    let o = finfourier(&[
        "transform",
        "--family",
        "legendre",
        "--n",
        "1",
        "--lambda",
        "3.14159265358979",
        "--method",
        "all",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    let methods: Vec<_> = rows.iter().map(|r| r[4].to_string()).collect();
    assert_eq!(methods, ["L-coeff", "L-bessel", "L-hyp", "L-closed"]);
    let im: Vec<f64> = rows.iter().map(|r| r[6].parse().unwrap()).collect();
    for v in &im {
        assert!((v - std::f64::consts::FRAC_2_PI).abs() < 1e-6);
        for w in &im {
            assert!((v - w).abs() / v.abs() < 1e-10);
        }
    }
}

#[test]
fn jacobi_at_zero_reports_the_discrepancy() {
    let o = finfourier(&[
        "transform",
        "--family",
        "jacobi",
        "--alpha",
        "1",
        "--beta",
        "0",
        "--n",
        "1",
        "--lambda",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["schema"], "finfourier/1");
    let row = &doc["rows"][0];
    assert_eq!(row["method"], "J-lambda0");
    assert_eq!(row["re"].as_f64(), Some(1.0));
    assert_eq!(row["im"].as_f64(), Some(0.0));
    assert!(row["flags"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f == "paper-formula-discrepancy"));
}

#[test]
fn table_counts_and_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = finfourier(&[
        "table",
        "--family",
        "legendre",
        "--n",
        "0..2",
        "--lambda-grid",
        "0:5:3",
        "--method",
        "all",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let path = dir.path().join("table.csv");
    std::fs::write(&path, &o.stdout).unwrap();
    let rows = csv_rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 9 * 4);
    for r in &rows {
        let n: usize = r[1].parse().unwrap();
        let lambda: f64 = r[3].parse().unwrap();
        let want = hat(&FamilySpec::legendre(n).unwrap(), lambda).unwrap().value;
        if r[4] == *"L-closed" && lambda != 0.0 {
            assert_eq!(r[5].parse::<f64>().unwrap(), want.re, "{r:?}");
            assert_eq!(r[6].parse::<f64>().unwrap(), want.im, "{r:?}");
        }
    }
}

#[test]
fn orthogonality_row_is_zero() {
    let o = finfourier(&[
        "table",
        "--family",
        "legendre",
        "--n",
        "4",
        "--lambda-grid",
        "0:1:2",
        "--format",
        "csv",
    ]);
    let rows = csv_rows(&stdout(&o));
    let r = rows.iter().find(|r| &r[3] == "0.0000000000000000e0").unwrap();
    assert_eq!(r[5].parse::<f64>().unwrap(), 0.0);
    assert_eq!(r[6].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn json_tables_are_deterministic() {
    let args = [
        "table",
        "--family",
        "gegenbauer",
        "--nu",
        "2.5",
        "--n",
        "0..6",
        "--lambda-grid",
        "-20:20:9",
        "--format",
        "json",
    ];
    let (a, b) = (finfourier(&args), finfourier(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 7 * 9);
}

#[test]
fn seventeen_significant_digits() {
    let o = finfourier(&["transform", "--family", "chebyshev-t", "--n", "3", "--lambda", "2.5"]);
    let text = stdout(&o);
    let line = text.lines().nth(1).unwrap();
    let im = line.split_whitespace().nth(6).unwrap();
    assert_eq!(
        im.split('e')
            .next()
            .unwrap()
            .trim_start_matches('-')
            .replace('.', "")
            .len(),
        17,
        "{line}"
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["transform", "--family", "legendre", "--n", "1"][..],
        &["transform", "--family", "hermite", "--n", "1", "--lambda", "1"],
        &[
            "transform",
            "--family",
            "legendre",
            "--n",
            "1",
            "--lambda",
            "1",
            "--tol",
            "1e-20",
        ],
        &[
            "transform",
            "--family",
            "legendre",
            "--n",
            "1",
            "--lambda",
            "1",
            "--nu",
            "2",
        ],
        &["table", "--family", "legendre", "--n", "1", "--lambda-grid", "1:0:5"],
        &["table", "--family", "legendre", "--n", "1", "--lambda-grid", "0:1:1"],
        &[
            "transform",
            "--family",
            "jacobi",
            "--alpha",
            "-1.5",
            "--n",
            "1",
            "--lambda",
            "1",
        ],
        &["verify", "--suite", "nonsense"],
    ] {
        let o = finfourier(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn degree_cap_follows_the_environment() {
    let args = ["transform", "--family", "legendre", "--n", "250", "--lambda", "300"];
    assert_eq!(finfourier(&args).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_finfourier"))
        .args(args)
        .env("FINFOURIER_MAX_DEGREE", "300")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_suite_selection_and_format() {
    let o = finfourier(&[
        "verify",
        "--suite",
        "lambda0,bessel",
        "--tol",
        "1e-8",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema"], "finfourier/1");
    assert_eq!(doc["passed"], true);
    let names: Vec<_> = doc["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["lambda0", "bessel"]);
}

#[test]
fn parseval_report() {
    let o = finfourier(&[
        "parseval", "--n", "2", "--alpha", "1", "--jmax", "64", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["m"], 2);
    assert!((doc["target"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert!(doc["residual"].as_f64().unwrap() < 1e-2);
    let js: Vec<u64> = doc["octaves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["j"].as_u64().unwrap())
        .collect();
    assert_eq!(js, [1, 2, 4, 8, 16, 32, 64]);
}
