//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed; exits non-zero when any criterion fails.

use std::path::PathBuf;
use std::process::Command;

use finfourier::parseval::{h_n, parseval_partial_sum};
use finfourier::transforms::jacobi_hat_zero;
use finfourier::Complex64;
use finfourier_cli::suites::{suite, Ctx, SuiteReport};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

/// Runs a suite and checks its worst deviation against a bound pinned here.
fn bounded(name: &str, bound: f64) -> Outcome {
    let r: SuiteReport = suite(name).expect("suite exists").run(&Ctx::default());
    let passed = r.errors == 0 && r.worst <= bound;
    let mut detail = format!(
        "{name}: worst {:.3e} (bound {bound:.0e}) over {} cases at {}",
        r.worst, r.cases, r.worst_case
    );
    if let Some(e) = &r.first_error {
        detail.push_str(&format!("; {} evaluation error(s), first {e}", r.errors));
    }
    Outcome { passed, detail }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        passed: parts.iter().all(|p| p.passed),
        detail: parts.into_iter().map(|p| p.detail).collect::<Vec<_>>().join("; "),
    }
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = vec![(1usize, 1.0, 0.0, 1.0)];
    cases.extend((1..=10).map(|n| (n, 0.0, 0.0, 0.0)));
    for &(n, a, b, want) in &cases {
        match jacobi_hat_zero::<f64>(n, a, b) {
            Ok(r) if r.value == Complex64::new(want, 0.0) => {}
            other => bad.push(format!("n={n} ({a},{b}): {:?}", other.map(|r| r.value))),
        }
    }
    let verdicts = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/verdicts.md");
    let table = std::fs::read_to_string(&verdicts).unwrap_or_default();
    let mut rows = vec!["| 1 | 1 | 0 | 1 |".to_string()];
    rows.extend((1..=10).map(|n| format!("| {n} | 0 | 0 | 0 |")));
    let missing: Vec<_> = rows
        .iter()
        .filter(|r| !table.lines().any(|l| l.starts_with(r.as_str())))
        .collect();
    if !missing.is_empty() {
        bad.push(format!("verdict table lacks rows {missing:?}"));
    }
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "exact values 1 and 0 reproduced; printed-display deviations recorded in docs/verdicts.md".into()
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_8() -> Outcome {
    let mut worst_diag = (0f64, String::new());
    let mut worst_off = (0f64, String::new());
    let mut errors = Vec::new();
    for &(a, b) in &[(0.0, 0.0), (1.0, 0.0)] {
        for n in 0..=3 {
            for m in 0..=3 {
                let r = match parseval_partial_sum(n, m, a, b, 512) {
                    Ok(r) => r,
                    Err(e) => {
                        errors.push(format!("n={n} m={m}: {e}"));
                        continue;
                    }
                };
                let label = format!("n={n} m={m} ({a},{b})");
                if n == m {
                    let ratio = r.residual / (1.0 + h_n(n, a, b).unwrap());
                    if ratio > worst_diag.0 {
                        worst_diag = (ratio, label);
                    }
                } else if r.residual > worst_off.0 {
                    worst_off = (r.residual, label);
                }
            }
        }
    }
    let kummer = bounded("kummer", 1e-10);
    let passed = errors.is_empty() && worst_diag.0 <= 1e-4 && worst_off.0 <= 1e-4 && kummer.passed;
    Outcome {
        passed,
        detail: format!(
            "J=512 diagonal |S-h_n|/(1+h_n) worst {:.3e} at {} (bound 1e-4); off-diagonal |S| worst {:.3e} at {} \
             (bound 1e-4); {}{}",
            worst_diag.0,
            worst_diag.1,
            worst_off.0,
            worst_off.1,
            kummer.detail,
            if errors.is_empty() {
                String::new()
            } else {
                format!("; errors: {}", errors.join(", "))
            }
        ),
    }
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_finfourier"))
            .args(["verify", "--suite", "all", "--seed", "0"])
            .output()
            .expect("the finfourier binary runs")
    };
    let (first, second) = (run(), run());
    let identical = first.stdout == second.stdout && first.status.code() == second.status.code();
    Outcome {
        passed: identical && !first.stdout.is_empty(),
        detail: format!(
            "two runs of `verify --suite all --seed 0`: {} bytes, exit {:?}; {}",
            first.stdout.len(),
            first.status.code(),
            if identical { "byte-identical" } else { "reports differ" }
        ),
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("four-form Legendre equivalence", || bounded("legendre-forms", 1e-9)),
        ("oracle equivalence", || bounded("oracle", 1e-8)),
        ("Legendre transform as 2 i^n j_n", || bounded("bessel", 1e-10)),
        ("alternating binomial and Vandermonde identities, exact", || {
            bounded("binomial-identities", 0.0)
        }),
        ("weighted transform against quadrature", || bounded("weighted", 1e-8)),
        ("λ = 0 adjudication", criterion_6),
        ("operator method", || {
            all(vec![bounded("operator", 1e-9), bounded("sinc-derivative", 1e-11)])
        }),
        ("Parseval convergence and Kummer identity", criterion_8),
        ("stability across the small-λ switch", || {
            all(vec![bounded("continuity", 1e-8), bounded("taylor", 1e-10)])
        }),
        ("determinism of verify", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {}",
            k + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
