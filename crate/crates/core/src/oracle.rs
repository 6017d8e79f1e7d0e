//! Method-independent quadrature of the defining integrals.
//!
//! `[-1, 1]` is cut into panels no wider than `π/|λ|`, so that each holds at
//! most one oscillation of `e^{iλx}`. Smooth panels use a 20-point
//! Gauss-Legendre rule compared against the same rule on both halves; a
//! panel whose two estimates disagree is bisected. Panels touching an
//! endpoint where the Jacobi weight is singular use tanh-sinh quadrature in
//! the distance to the endpoint, which is carried exactly so that
//! `(1−x)^α` does not lose digits.

use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{param, Result};
use crate::numerics::ComplexAccumulator;
use crate::polyfamilies::{eval, FamilySpec};
use crate::Complex64;

/// Default absolute tolerance (relative to `1 + |value|`).
pub const DEFAULT_TOL: f64 = 1e-13;
/// Smallest tolerance accepted by [`quad_hat`].
pub const MIN_TOL: f64 = 1e-13;
/// Smallest tolerance accepted by [`quad_weighted_hat`].
pub const MIN_WEIGHTED_TOL: f64 = 1e-13;
/// Integrand evaluations allowed per integral.
pub const DEFAULT_BUDGET: usize = 2_000_000;

const GAUSS_POINTS: usize = 20;
const MAX_DEPTH: u32 = 40;

/// Quadrature result.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureEstimate {
    pub value: Complex64,
    pub abs_err_est: f64,
    pub evaluations: usize,
    /// `false` when the evaluation budget ran out before the tolerance was met.
    pub converged: bool,
}

fn gauss_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let m = GAUSS_POINTS;
        let mut out = Vec::with_capacity(m);
        for i in 1..=m {
            let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        out
    })
}

fn gauss_panel(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = ComplexAccumulator::<f64>::new();
    for &(x, w) in gauss_rule() {
        acc.add(f(c + h * x) * (w * h));
    }
    (acc.value(), acc.magnitude())
}

/// Panel boundaries: at least `max(8, ⌈|λ|/π⌉, ⌈n/2⌉)` equal panels.
fn panel_edges(lambda: f64, n: usize) -> Vec<f64> {
    let count = 8usize
        .max((lambda.abs() / std::f64::consts::PI).ceil() as usize)
        .max(n.div_ceil(2));
    (0..=count).map(|i| -1.0 + 2.0 * i as f64 / count as f64).collect()
}

struct Budget {
    used: usize,
    limit: usize,
    exhausted: bool,
}

impl Budget {
    fn take(&mut self, k: usize) -> bool {
        if self.used + k > self.limit {
            self.exhausted = true;
            return false;
        }
        self.used += k;
        true
    }
}

/// Adaptive Gauss on `[a, b]`, accumulating into `acc`; returns the error
/// estimate.
fn adaptive_gauss(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    local_tol: f64,
    budget: &mut Budget,
    acc: &mut ComplexAccumulator<f64>,
) -> f64 {
    let mut err = 0.0;
    // left-to-right depth-first order keeps the summation order fixed
    let mut stack = vec![(a, b, 0u32, None::<Complex64>)];
    while let Some((lo, hi, depth, coarse)) = stack.pop() {
        let whole = match coarse {
            Some(v) => v,
            None => {
                if !budget.take(GAUSS_POINTS) {
                    break;
                }
                gauss_panel(f, lo, hi).0
            }
        };
        if !budget.take(2 * GAUSS_POINTS) {
            acc.add(whole);
            err += whole.norm();
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let (left, lmag) = gauss_panel(f, lo, mid);
        let (right, rmag) = gauss_panel(f, mid, hi);
        let fine = left + right;
        let diff = (fine - whole).norm();
        let share = local_tol * (hi - lo) / 2.0;
        let roundoff = 64.0 * f64::EPSILON * (lmag + rmag);
        if diff <= share.max(roundoff) || depth >= MAX_DEPTH {
            acc.add(fine);
            err += diff.min(share.max(roundoff)).max(roundoff);
        } else {
            stack.push((mid, hi, depth + 1, Some(right)));
            stack.push((lo, mid, depth + 1, Some(left)));
        }
    }
    err
}

/// `∫_{-1}^{1} p(x) e^{iλx} dx` for a pointwise evaluator `p`.
pub fn quad_hat(p: impl Fn(f64) -> f64, lambda: f64, tol: f64) -> Result<QuadratureEstimate> {
    quad_hat_with(p, lambda, tol, 0, DEFAULT_BUDGET)
}

/// As [`quad_hat`], with a degree hint for the panelling and an explicit
/// evaluation budget.
pub fn quad_hat_with(
    p: impl Fn(f64) -> f64,
    lambda: f64,
    tol: f64,
    degree_hint: usize,
    budget: usize,
) -> Result<QuadratureEstimate> {
    if tol.is_nan() || tol < MIN_TOL {
        return Err(param(format!("quadrature tolerance must be at least {MIN_TOL}")));
    }
    if !lambda.is_finite() {
        return Err(param("λ must be finite"));
    }
    let f = |x: f64| Complex::from_polar(p(x), lambda * x);
    let mut budget = Budget {
        used: 0,
        limit: budget,
        exhausted: false,
    };
    let mut acc = ComplexAccumulator::new();
    let mut err = 0.0;
    let edges = panel_edges(lambda, degree_hint);
    // the absolute target tol·(1+|value|) is unknown up front; 1 is a lower
    // bound for the factor so the local targets are conservative
    for w in edges.windows(2) {
        err += adaptive_gauss(&f, w[0], w[1], tol / 2.0, &mut budget, &mut acc);
    }
    Ok(QuadratureEstimate {
        value: acc.value(),
        abs_err_est: err,
        evaluations: budget.used,
        converged: !budget.exhausted,
    })
}

/// Oracle value of the transform of a family polynomial.
pub fn quad_hat_spec(spec: &FamilySpec, lambda: f64, tol: f64) -> Result<QuadratureEstimate> {
    spec.validate()?;
    let s = *spec;
    quad_hat_with(
        move |x| eval(&s, x).unwrap_or(f64::NAN),
        lambda,
        tol,
        spec.n,
        DEFAULT_BUDGET,
    )
}

/// Tanh-sinh quadrature of `g(d)` over `d ∈ [0, w]`, where `g` may be
/// singular at `d = 0`. Returns value, error estimate and evaluations.
fn tanh_sinh_endpoint(g: &dyn Fn(f64, f64) -> Complex64, w: f64, tol: f64, budget: &mut Budget) -> (Complex64, f64) {
    // d = w / (1 + e^{−2u}), w − d = w / (1 + e^{2u}), u = (π/2) sinh t
    let half_pi = std::f64::consts::FRAC_PI_2;
    let node = |t: f64| -> Option<(f64, f64, f64)> {
        let u = half_pi * t.sinh();
        let d = w / (1.0 + (-2.0 * u).exp());
        let rest = w / (1.0 + (2.0 * u).exp());
        let cu = u.cosh();
        let jac = w * half_pi * t.cosh() / (2.0 * cu * cu);
        if d == 0.0 || rest == 0.0 || !jac.is_finite() || jac == 0.0 {
            None
        } else {
            Some((d, rest, jac))
        }
    };
    let tmax = 6.5;
    let mut h = 1.0;
    let mut sum = ComplexAccumulator::<f64>::new();
    let mut k = 0i64;
    while (k as f64) * h <= tmax {
        for t in if k == 0 {
            vec![0.0]
        } else {
            vec![k as f64 * h, -(k as f64) * h]
        } {
            if !budget.take(1) {
                return (sum.value() * h, f64::INFINITY);
            }
            if let Some((d, rest, jac)) = node(t) {
                sum.add(g(d, rest) * jac);
            }
        }
        k += 1;
    }
    let mut prev = sum.value() * h;
    let mut level_err = f64::INFINITY;
    for _ in 0..12 {
        h /= 2.0;
        // new nodes are the odd multiples of h
        let mut j = 1i64;
        while (j as f64) * h <= tmax {
            for t in [j as f64 * h, -(j as f64) * h] {
                if !budget.take(1) {
                    return (prev, f64::INFINITY);
                }
                if let Some((d, rest, jac)) = node(t) {
                    sum.add(g(d, rest) * jac);
                }
            }
            j += 2;
        }
        let cur = sum.value() * h;
        level_err = (cur - prev).norm();
        prev = cur;
        let roundoff = 64.0 * f64::EPSILON * sum.magnitude() * h;
        if level_err <= tol.max(roundoff) {
            return (cur, level_err.max(roundoff));
        }
    }
    (prev, level_err)
}

/// `∫_{-1}^{1} (1−x)^α (1+x)^β P_n^{(α,β)}(x) e^{iλx} dx`.
pub fn quad_weighted_hat(n: usize, alpha: f64, beta: f64, lambda: f64, tol: f64) -> Result<QuadratureEstimate> {
    if tol.is_nan() || tol < MIN_WEIGHTED_TOL {
        return Err(param(format!(
            "quadrature tolerance must be at least {MIN_WEIGHTED_TOL}"
        )));
    }
    if !lambda.is_finite() {
        return Err(param("λ must be finite"));
    }
    let spec = FamilySpec::jacobi(n, alpha, beta)?;
    let p = |x: f64| eval(&spec, x).unwrap_or(f64::NAN);
    let interior = |x: f64| Complex::from_polar((1.0 - x).powf(alpha) * (1.0 + x).powf(beta) * p(x), lambda * x);
    let edges = panel_edges(lambda, n);
    let mut budget = Budget {
        used: 0,
        limit: DEFAULT_BUDGET,
        exhausted: false,
    };
    let mut acc = ComplexAccumulator::new();
    let mut err = 0.0;
    let last = edges.len() - 2;
    for (i, w) in edges.windows(2).enumerate() {
        let width = w[1] - w[0];
        let local = tol / 2.0 * width / 2.0;
        if i == 0 {
            // x = −1 + d
            let g = |d: f64, _rest: f64| {
                Complex::from_polar((2.0 - d).powf(alpha) * d.powf(beta) * p(-1.0 + d), lambda * (-1.0 + d))
            };
            let (v, e) = tanh_sinh_endpoint(&g, width, local, &mut budget);
            acc.add(v);
            err += e;
        } else if i == last {
            // x = 1 − d
            let g = |d: f64, _rest: f64| {
                Complex::from_polar(d.powf(alpha) * (2.0 - d).powf(beta) * p(1.0 - d), lambda * (1.0 - d))
            };
            let (v, e) = tanh_sinh_endpoint(&g, width, local, &mut budget);
            acc.add(v);
            err += e;
        } else {
            err += adaptive_gauss(&interior, w[0], w[1], tol / 2.0, &mut budget, &mut acc);
        }
    }
    Ok(QuadratureEstimate {
        value: acc.value(),
        abs_err_est: err,
        evaluations: budget.used,
        converged: !budget.exhausted && err.is_finite(),
    })
}
