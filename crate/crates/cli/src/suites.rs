//! Verification suites behind `finfourier verify`.
//!
//! Each suite evaluates a list of cases to a normalized deviation and passes
//! when every case evaluates and the worst deviation is within the suite's
//! threshold. Cases run in parallel; results are folded in case order, so a
//! report depends only on the seed and the tolerance.

use std::f64::consts::PI;

use finfourier::exact::{binomial_int, binomial_signed};
use finfourier::numerics::tau;
use finfourier::operator::{operator_hat, sinc_derivative, sinc_derivative_ab};
use finfourier::oracle::{quad_hat_spec, quad_weighted_hat};
use finfourier::parseval::parseval_partial_sum;
use finfourier::polyfamilies::{alternating_binomial_sum, reduce_to_jacobi, vandermonde_sum, FamilySpec};
use finfourier::scalar::i_pow;
use finfourier::specialfns::{kummer_identity_residual, spherical_bessel_j};
use finfourier::transforms::{hat, hat_with, jacobi_hat_zero, taylor_value_order_two, weighted_jacobi_hat, MethodId};
use finfourier::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::args::{Format, VerifyArgs};
use crate::output::{self, json_real, real, SCHEMA};
use crate::Failure;

pub const JACOBI_PARAMS: [(f64, f64); 5] = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (2.0, 3.0), (-0.3, 0.7)];
pub const GEGENBAUER_PARAMS: [f64; 3] = [0.5, 1.0, 2.5];

/// Settings shared by all suites.
#[derive(Copy, Clone, Debug)]
pub struct Ctx {
    pub seed: u64,
    /// Quadrature tolerance of the oracle evaluations.
    pub tol: f64,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { seed: 0, tol: 1e-10 }
    }
}

/// One case: a label and its normalized deviation, or why it could not be
/// evaluated.
pub type Case = (String, Result<f64, String>);

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub description: &'static str,
    pub threshold: f64,
    pub cases: usize,
    pub worst: f64,
    pub worst_case: String,
    pub errors: usize,
    pub first_error: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.errors == 0 && self.worst <= self.threshold
    }

    fn fold(suite: &Suite, cases: Vec<Case>) -> Self {
        let mut r = SuiteReport {
            name: suite.name,
            description: suite.description,
            threshold: suite.threshold,
            cases: cases.len(),
            worst: 0.0,
            worst_case: String::new(),
            errors: 0,
            first_error: None,
        };
        for (label, outcome) in cases {
            match outcome {
                Ok(d) => {
                    let d = if d.is_nan() { f64::INFINITY } else { d };
                    if d > r.worst || r.worst_case.is_empty() {
                        r.worst = d;
                        r.worst_case = label;
                    }
                }
                Err(e) => {
                    r.errors += 1;
                    r.first_error.get_or_insert_with(|| format!("{label}: {e}"));
                }
            }
        }
        r
    }
}

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    pub threshold: f64,
    cases: fn(&Ctx) -> Vec<Case>,
}

impl Suite {
    pub fn run(&self, ctx: &Ctx) -> SuiteReport {
        SuiteReport::fold(self, (self.cases)(ctx))
    }
}

pub const SUITES: [Suite; 14] = [
    Suite {
        name: "legendre-forms",
        description: "max pairwise relative deviation of the four Legendre forms, n<=25, 24 log-spaced lambda in [0.5,100]",
        threshold: 1e-9,
        cases: legendre_forms,
    },
    Suite {
        name: "oracle",
        description: "|auto - quadrature|/(1+|quadrature|), all families and parameter sets, n<=20, plus seeded samples",
        threshold: 1e-8,
        cases: oracle,
    },
    Suite {
        name: "bessel",
        description: "relative deviation of the Legendre transform from 2 i^n j_n, n<=30",
        threshold: 1e-10,
        cases: bessel,
    },
    Suite {
        name: "binomial-identities",
        description: "mismatches of the alternating binomial identity (n<=60) and Vandermonde's identity, exact integers",
        threshold: 0.0,
        cases: binomial_identities,
    },
    Suite {
        name: "weighted",
        description: "deviation of the weighted Jacobi transform from tanh-sinh quadrature relative to max(|quadrature|, 1e-6 * weight mass), n<=12, |lambda|<=40pi",
        threshold: 1e-8,
        cases: weighted,
    },
    Suite {
        name: "lambda0",
        description: "absolute deviation of the lambda=0 Jacobi values from the exact moments",
        threshold: 0.0,
        cases: lambda0,
    },
    Suite {
        name: "reductions",
        description: "relative deviation between each family and its Jacobi reduction, plus seeded samples",
        threshold: 1e-10,
        cases: reductions,
    },
    Suite {
        name: "kummer",
        description: "relative residual of 1F1(u;u+v;z) = e^z 1F1(v;u+v;-z) on the Parseval arguments and seeded samples",
        threshold: 1e-10,
        cases: kummer,
    },
    Suite {
        name: "bessel-recurrence",
        description: "normalized residual of j_{n-1} + j_{n+1} = (2n+1)/x j_n, n<=60",
        threshold: 1e-12,
        cases: bessel_recurrence,
    },
    Suite {
        name: "sinc-derivative",
        description: "relative deviation of the (a,b) recurrence from the explicit sinc derivative, n<=30",
        threshold: 1e-11,
        cases: sinc_derivative_cases,
    },
    Suite {
        name: "operator",
        description: "relative deviation of the operator method from the automatic evaluation, n<=15",
        threshold: 1e-9,
        cases: operator,
    },
    Suite {
        name: "parseval",
        description: "growth ratio of successive octave increments of the Parseval partial sums up to J=512",
        threshold: 1.0,
        cases: parseval,
    },
    Suite {
        name: "continuity",
        description: "relative jump of the automatic evaluation across the small-lambda switch, n<=20",
        threshold: 1e-8,
        cases: continuity,
    },
    Suite {
        name: "taylor",
        description: "absolute deviation from the exact order-2 Taylor value at lambda=+-1e-6, n<=20",
        threshold: 1e-10,
        cases: taylor,
    },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// 24 log-spaced points on `[0.5, 100]`.
pub fn log_grid() -> Vec<f64> {
    (0..24).map(|k| 0.5 * 200f64.powf(k as f64 / 23.0)).collect()
}

/// Every family with every parameter set, at degree `n`.
pub fn all_specs(n: usize) -> Vec<FamilySpec> {
    let mut v = vec![FamilySpec::legendre(n).unwrap()];
    v.extend(JACOBI_PARAMS.iter().map(|&(a, b)| FamilySpec::jacobi(n, a, b).unwrap()));
    v.extend(
        GEGENBAUER_PARAMS
            .iter()
            .map(|&nu| FamilySpec::gegenbauer(n, nu).unwrap()),
    );
    v.push(FamilySpec::chebyshev_t(n).unwrap());
    v.push(FamilySpec::chebyshev_u(n).unwrap());
    v
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / a.norm().max(b.norm())
    }
}

fn label(spec: &FamilySpec, lambda: f64) -> String {
    format!("{spec} lambda={}", real(lambda))
}

fn run_cases<J, F>(jobs: Vec<J>, f: F) -> Vec<Case>
where
    J: Send + Sync,
    F: Fn(&J) -> Case + Send + Sync,
{
    jobs.par_iter().map(f).collect()
}

fn err(e: finfourier::Error) -> String {
    e.to_string()
}

fn legendre_forms(_: &Ctx) -> Vec<Case> {
    let forms = [MethodId::LCoeff, MethodId::LBessel, MethodId::LHyp, MethodId::LClosed];
    let jobs: Vec<(usize, f64)> = (0..=25)
        .flat_map(|n| log_grid().into_iter().map(move |l| (n, l)))
        .collect();
    run_cases(jobs, |&(n, l)| {
        let spec = FamilySpec::legendre(n).unwrap();
        let vals: Result<Vec<Complex64>, _> = forms.iter().map(|&m| hat_with(&spec, l, m).map(|r| r.value)).collect();
        let dev = vals.map_err(err).map(|v| {
            let mut worst = 0f64;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    worst = worst.max(rel(v[i], v[j]));
                }
            }
            worst
        });
        (label(&spec, l), dev)
    })
}

fn oracle(ctx: &Ctx) -> Vec<Case> {
    let mut lambdas = log_grid();
    lambdas.extend([0.0, 1e-4, 1e-2]);
    let mut jobs: Vec<(FamilySpec, f64)> = Vec::new();
    for n in 0..=20 {
        for spec in all_specs(n) {
            jobs.extend(lambdas.iter().map(|&l| (spec, l)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    for _ in 0..64 {
        let n = rng.gen_range(0..=20);
        let specs = all_specs(n);
        let spec = specs[rng.gen_range(0..specs.len())];
        jobs.push((spec, rng.gen_range(-100.0..100.0)));
    }
    let tol = ctx.tol;
    run_cases(jobs, move |&(spec, l)| {
        let dev = (|| {
            let a = hat(&spec, l).map_err(err)?.value;
            let q = quad_hat_spec(&spec, l, tol).map_err(err)?;
            if !q.converged {
                return Err("quadrature budget exhausted".to_string());
            }
            Ok((a - q.value).norm() / (1.0 + q.value.norm()))
        })();
        (label(&spec, l), dev)
    })
}

fn bessel(_: &Ctx) -> Vec<Case> {
    let jobs: Vec<(usize, f64)> = (0..=30).flat_map(|n| [0.5, PI, 10.0, 80.0].map(|l| (n, l))).collect();
    run_cases(jobs, |&(n, l)| {
        let spec = FamilySpec::legendre(n).unwrap();
        let dev = (|| {
            let a = hat(&spec, l).map_err(err)?.value;
            let b = i_pow::<f64>(n as i64) * (2.0 * spherical_bessel_j::<f64>(n, l).map_err(err)?);
            Ok(rel(a, b))
        })();
        (label(&spec, l), dev)
    })
}

enum Identity {
    Alternating { n: u64, k: u64 },
    Vandermonde { a: i64, b: i64, n: usize },
}

fn binomial_identities(_: &Ctx) -> Vec<Case> {
    let mut jobs = Vec::new();
    for n in 0..=60 {
        jobs.extend((0..=n).map(|k| Identity::Alternating { n, k }));
    }
    for a in 0..=40 {
        for b in 0..=40 {
            jobs.extend((0..=40).map(|n| Identity::Vandermonde { a, b, n }));
        }
    }
    // negative upper indices, where the binomials are the generalized ones
    for a in (-40..0).step_by(3) {
        for b in (-40..=40).step_by(5) {
            jobs.extend((0..=12).map(|n| Identity::Vandermonde { a, b, n }));
        }
    }
    run_cases(jobs, |job| match *job {
        Identity::Alternating { n, k } => {
            let ok = alternating_binomial_sum(n, k) == binomial_int(n, k);
            (format!("alternating n={n} k={k}"), Ok(if ok { 0.0 } else { 1.0 }))
        }
        Identity::Vandermonde { a, b, n } => {
            let ok = vandermonde_sum(a, b, n) == binomial_signed(a + b, n);
            (format!("vandermonde a={a} b={b} n={n}"), Ok(if ok { 0.0 } else { 1.0 }))
        }
    })
}

fn weighted(_: &Ctx) -> Vec<Case> {
    let base = [0.0, 0.5, 2.0, PI, 10.0, 37.0, 40.0 * PI];
    let lambdas: Vec<f64> = base
        .iter()
        .flat_map(|&l| if l == 0.0 { vec![l] } else { vec![l, -l] })
        .collect();
    let mut jobs = Vec::new();
    for n in 0..=12 {
        for &(a, b) in &JACOBI_PARAMS {
            jobs.extend(lambdas.iter().map(|&l| (n, a, b, l)));
        }
    }
    run_cases(jobs, |&(n, a, b, l)| {
        let dev = (|| {
            let got = weighted_jacobi_hat(n, a, b, l).map_err(err)?;
            let q = quad_weighted_hat(n, a, b, l, 1e-13).map_err(err)?;
            if !q.converged {
                return Err("quadrature budget exhausted".to_string());
            }
            // relative, floored at 1e-6 of the weight's mass: the transform
            // has zeros (at λ = 0 for every n ≥ 1, by orthogonality)
            let mass = weighted_jacobi_hat(0, a, b, 0.0).map_err(err)?.re;
            let scale = q.value.norm().max(1e-6 * mass);
            Ok((got - q.value).norm() / scale)
        })();
        (format!("jacobi n={n} alpha={a};beta={b} lambda={}", real(l)), dev)
    })
}

fn lambda0(_: &Ctx) -> Vec<Case> {
    let mut jobs = vec![(1usize, 1.0, 0.0, 1.0)];
    jobs.extend((1..=10).map(|n| (n, 0.0, 0.0, 0.0)));
    run_cases(jobs, |&(n, a, b, want)| {
        let dev = jacobi_hat_zero::<f64>(n, a, b)
            .map_err(err)
            .map(|r| (r.value - Complex64::new(want, 0.0)).norm());
        (format!("jacobi n={n} alpha={a};beta={b}"), dev)
    })
}

fn reductions(ctx: &Ctx) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x5eed);
    let mut jobs = Vec::new();
    for n in 0..=20 {
        let specs: Vec<FamilySpec> = all_specs(n)
            .into_iter()
            .filter(|s| !s.family.name().eq("jacobi"))
            .collect();
        for spec in specs {
            jobs.extend(log_grid().into_iter().map(|l| (spec, l)));
            jobs.push((spec, rng.gen_range(-100.0..100.0)));
        }
    }
    run_cases(jobs, |&(spec, l)| {
        let dev = (|| {
            let a = hat(&spec, l).map_err(err)?.value;
            let (j, scale) = reduce_to_jacobi(&spec).map_err(err)?;
            let b = hat(&j, l).map_err(err)?.value * scale;
            Ok(rel(a, b))
        })();
        (label(&spec, l), dev)
    })
}

fn kummer(ctx: &Ctx) -> Vec<Case> {
    let mut jobs: Vec<(f64, f64, Complex64)> = Vec::new();
    for m in 0..=3 {
        for &(a, b) in &[(0.0, 0.0), (1.0, 0.0)] {
            for j in (-64..=64i64).filter(|&j| j != 0) {
                let mf = m as f64;
                jobs.push((mf + b + 1.0, mf + a + 1.0, Complex64::new(0.0, 2.0 * PI * j as f64)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x1f1);
    for _ in 0..64 {
        let (u, v) = (rng.gen_range(0.1..6.0), rng.gen_range(0.1..6.0));
        jobs.push((
            u,
            v,
            Complex64::new(rng.gen_range(-20.0..20.0), rng.gen_range(-200.0..200.0)),
        ));
    }
    run_cases(jobs, |&(u, v, z)| {
        let dev = kummer_identity_residual(u, v, z).map_err(err);
        (
            format!("u={} v={} z={}{:+}i", real(u), real(v), real(z.re), real(z.im)),
            dev,
        )
    })
}

fn bessel_recurrence(_: &Ctx) -> Vec<Case> {
    let jobs: Vec<(usize, f64)> = (1..=60)
        .flat_map(|n| [0.1, 0.5, 1.0, PI, 10.0, 37.5, 80.0, 200.0].map(|x| (n, x)))
        .collect();
    run_cases(jobs, |&(n, x)| {
        let dev = (|| {
            let j = |k: usize| spherical_bessel_j::<f64>(k, x).map_err(err);
            let (lo, mid, hi) = (j(n - 1)?, j(n)?, j(n + 1)?);
            let c = (2 * n + 1) as f64 / x * mid;
            let scale = lo.abs() + hi.abs() + c.abs();
            Ok(if scale == 0.0 { 0.0 } else { (lo + hi - c).abs() / scale })
        })();
        (format!("n={n} x={}", real(x)), dev)
    })
}

fn sinc_derivative_cases(_: &Ctx) -> Vec<Case> {
    let jobs: Vec<(usize, f64)> = (0..=30).flat_map(|n| [0.7, 2.0, 9.0, 31.0].map(|l| (n, l))).collect();
    run_cases(jobs, |&(n, l)| {
        let dev = (|| {
            let a = sinc_derivative_ab(n, l).map_err(err)?;
            let e = sinc_derivative(n, l).map_err(err)?;
            Ok(if a == e { 0.0 } else { (a - e).abs() / e.abs() })
        })();
        (format!("n={n} lambda={}", real(l)), dev)
    })
}

fn operator(_: &Ctx) -> Vec<Case> {
    let mut jobs = Vec::new();
    for n in 0..=15 {
        for spec in all_specs(n) {
            jobs.extend([1.0, PI, 10.0, 50.0].map(|l| (spec, l)));
        }
    }
    run_cases(jobs, |&(spec, l)| {
        let dev = (|| {
            let op = operator_hat::<f64>(&spec, l).map_err(err)?.value;
            let auto = hat(&spec, l).map_err(err)?.value;
            Ok(rel(op, auto))
        })();
        (label(&spec, l), dev)
    })
}

fn parseval(_: &Ctx) -> Vec<Case> {
    let mut jobs = Vec::new();
    for &(a, b) in &[(0.0, 0.0), (1.0, 0.0)] {
        for n in 0..=3 {
            jobs.extend((0..=3).map(|m| (n, m, a, b)));
        }
    }
    run_cases(jobs, |&(n, m, a, b)| {
        let dev = parseval_partial_sum(n, m, a, b, 512).map_err(err).map(|r| {
            let at = |j: usize| r.octaves.iter().find(|o| o.0 == j).map(|o| o.1).unwrap_or_default();
            let mut worst = 0f64;
            for w in [32usize, 64, 128, 256].windows(2) {
                let later = (at(2 * w[1]) - at(w[1])).norm();
                let earlier = (at(w[1]) - at(w[0])).norm();
                // increments at roundoff level carry no information
                let floor = 1e-14 * (1.0 + r.target);
                if later > floor {
                    worst = worst.max(later / earlier.max(floor));
                }
            }
            worst
        });
        (format!("n={n} m={m} alpha={a};beta={b}"), dev)
    })
}

fn continuity(_: &Ctx) -> Vec<Case> {
    let jobs: Vec<FamilySpec> = (0..=20).flat_map(all_specs).collect();
    run_cases(jobs, |spec| {
        let t = tau(spec.n);
        let below = t * (1.0 - f64::EPSILON);
        let dev = (|| {
            let a = hat(spec, below).map_err(err)?.value;
            let b = hat(spec, t).map_err(err)?.value;
            Ok(rel(a, b))
        })();
        (label(spec, t), dev)
    })
}

fn taylor(_: &Ctx) -> Vec<Case> {
    let jobs: Vec<(FamilySpec, f64)> = (0..=20)
        .flat_map(all_specs)
        .flat_map(|s| [1e-6, -1e-6].map(|l| (s, l)))
        .collect();
    run_cases(jobs, |&(spec, l)| {
        let dev = (|| {
            let a = hat(&spec, l).map_err(err)?.value;
            let t = taylor_value_order_two(&spec, l).map_err(err)?;
            Ok((a - t).norm())
        })();
        (label(&spec, l), dev)
    })
}

#[derive(Serialize)]
struct JsonSuite<'a> {
    name: &'a str,
    passed: bool,
    worst_deviation: Box<RawValue>,
    threshold: Box<RawValue>,
    worst_case: &'a str,
    cases: usize,
    errors: usize,
    first_error: Option<&'a str>,
    description: &'a str,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    schema: &'static str,
    command: &'static str,
    seed: u64,
    tol: Box<RawValue>,
    passed: bool,
    suites: Vec<JsonSuite<'a>>,
}

/// Runs the selected suites in order.
pub fn run_suites(names: &[&'static Suite], ctx: &Ctx) -> Vec<SuiteReport> {
    names.iter().map(|s| s.run(ctx)).collect()
}

/// Suites named by `--suite`: `all`, or a comma-separated list.
pub fn select(spec: &str) -> Result<Vec<&'static Suite>, Failure> {
    if spec == "all" {
        return Ok(SUITES.iter().collect());
    }
    spec.split(',')
        .map(|name| {
            suite(name.trim()).ok_or_else(|| {
                let names: Vec<_> = SUITES.iter().map(|s| s.name).collect();
                Failure::Usage(format!(
                    "unknown suite `{name}` (expected all or one of {})",
                    names.join(", ")
                ))
            })
        })
        .collect()
}

/// The `verify` command: the report, and whether every suite passed.
pub fn verify(a: &VerifyArgs) -> Result<(String, bool), Failure> {
    let ctx = Ctx {
        seed: a.seed,
        tol: a.tol,
    };
    let reports = run_suites(&select(&a.suite)?, &ctx);
    let passed = reports.iter().all(SuiteReport::passed);
    let doc = match a.format {
        Format::Json => output::pretty(&VerifyDoc {
            schema: SCHEMA,
            command: "verify",
            seed: a.seed,
            tol: json_real(a.tol),
            passed,
            suites: reports
                .iter()
                .map(|r| JsonSuite {
                    name: r.name,
                    passed: r.passed(),
                    worst_deviation: json_real(r.worst),
                    threshold: json_real(r.threshold),
                    worst_case: &r.worst_case,
                    cases: r.cases,
                    errors: r.errors,
                    first_error: r.first_error.as_deref(),
                    description: r.description,
                })
                .collect(),
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "suite",
                "passed",
                "worst_deviation",
                "threshold",
                "worst_case",
                "cases",
                "errors",
            ])
            .expect("in-memory write");
            for r in &reports {
                w.write_record([
                    r.name.to_string(),
                    r.passed().to_string(),
                    real(r.worst),
                    real(r.threshold),
                    r.worst_case.clone(),
                    r.cases.to_string(),
                    r.errors.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
        }
        Format::Text => {
            let mut t = vec![["", "suite", "worst", "threshold", "cases", "worst case"]
                .map(String::from)
                .to_vec()];
            for r in &reports {
                t.push(vec![
                    if r.passed() { "PASS" } else { "FAIL" }.to_string(),
                    r.name.to_string(),
                    real(r.worst),
                    real(r.threshold),
                    r.cases.to_string(),
                    r.worst_case.clone(),
                ]);
            }
            let mut s = output::align(&t);
            for r in reports.iter().filter(|r| r.errors > 0) {
                s.push_str(&format!(
                    "{}: {} case(s) failed to evaluate; first: {}\n",
                    r.name,
                    r.errors,
                    r.first_error.as_deref().unwrap_or("")
                ));
            }
            s.push_str(if passed {
                "all suites passed\n"
            } else {
                "some suites failed\n"
            });
            s
        }
    };
    Ok((doc, passed))
}
