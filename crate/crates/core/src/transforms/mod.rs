//! Finite Fourier transforms `∫_{-1}^{1} P(x) e^{iλx} dx` by closed forms,
//! an exact-moment series, and an automatic dispatcher.
//!
//! Every entry point is generic over the scalar type. The `f64` facades
//! [`hat`] and [`hat_with`] evaluate in double-double and round, which is
//! what the command-line tool uses.

mod forms;
mod series;
mod weighted;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

pub use forms::{
    g_3f1, g_closed, g_ek, j_3f1, j_boundary, j_ek, l_bessel, l_closed, l_coeff, l_hyp, t_closed, u_closed, u_ek,
    FormValue,
};
pub use series::{moment_series_exact, SeriesValue, SERIES_TARGET_BITS};
pub use weighted::weighted_jacobi_hat;

use crate::error::{param, Error, Result};
use crate::exact::binomial_rational;
use crate::numerics::tau;
use crate::polyfamilies::{monomial_coefficients, reduce_to_jacobi_exact, Family, FamilySpec};
use crate::scalar::{cabs, complex_to_f64, int_rational, Real};
use crate::{Complex64, Dd};

/// Relative error estimate above which a result carries
/// [`Flags::CANCELLATION_WARNING`].
pub const CANCELLATION_WARNING_THRESHOLD: f64 = 1e-10;

/// Above `|λ| = n·this + 64` the dispatcher does not fall back to the
/// exact-moment series (its cost grows linearly in `|λ|`).
const SERIES_FALLBACK_SLOPE: f64 = 8.0;

/// Evaluation method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    LCoeff,
    LBessel,
    LHyp,
    LClosed,
    JEk,
    JBoundary,
    J3F1,
    JLambda0,
    GEk,
    GClosed,
    G3F1,
    UEk,
    UClosed,
    TClosed,
    SmallLambdaSeries,
    ViaJacobiReduction,
    Operator,
    Oracle,
}

impl MethodId {
    pub const ALL: [MethodId; 18] = [
        MethodId::LCoeff,
        MethodId::LBessel,
        MethodId::LHyp,
        MethodId::LClosed,
        MethodId::JEk,
        MethodId::JBoundary,
        MethodId::J3F1,
        MethodId::JLambda0,
        MethodId::GEk,
        MethodId::GClosed,
        MethodId::G3F1,
        MethodId::UEk,
        MethodId::UClosed,
        MethodId::TClosed,
        MethodId::SmallLambdaSeries,
        MethodId::ViaJacobiReduction,
        MethodId::Operator,
        MethodId::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodId::LCoeff => "L-coeff",
            MethodId::LBessel => "L-bessel",
            MethodId::LHyp => "L-hyp",
            MethodId::LClosed => "L-closed",
            MethodId::JEk => "J-Ek",
            MethodId::JBoundary => "J-boundary",
            MethodId::J3F1 => "J-3F1",
            MethodId::JLambda0 => "J-lambda0",
            MethodId::GEk => "G-Ek",
            MethodId::GClosed => "G-closed",
            MethodId::G3F1 => "G-3F1",
            MethodId::UEk => "U-Ek",
            MethodId::UClosed => "U-closed",
            MethodId::TClosed => "T-closed",
            MethodId::SmallLambdaSeries => "small-lambda-series",
            MethodId::ViaJacobiReduction => "via-jacobi-reduction",
            MethodId::Operator => "operator",
            MethodId::Oracle => "oracle",
        }
    }

    /// The formula each method evaluates (`z = 2iλ`).
    pub fn formula(self) -> &'static str {
        match self {
            MethodId::LCoeff => "2^n Σ C(n,k) C((n+k-1)/2, n) φ_k(λ), φ_k the x^k moment kernel",
            MethodId::LBessel => "i^n sqrt(2π/λ) J_{n+1/2}(λ) = 2 i^n j_n(λ)",
            MethodId::LHyp => "2 Σ (n+k)!/((n-k)! k!) [e^{-iλ} E_k(z) - e^{iλ}] / (-z)^{k+1}",
            MethodId::LClosed => "2 Σ (n+k)!/((n-k)! k!) [(-1)^{n+k} e^{-iλ} - e^{iλ}] / (-z)^{k+1}",
            MethodId::JEk => "2 e^{iλ} (α+1)_n Σ (n+α+β+1)_k/((n-k)! (α+1)_k) [e^{-z} E_k(z) - 1] / (-z)^{k+1}",
            MethodId::JBoundary => {
                "2 Σ (n+α+β+1)_k/((n-k)! (-z)^{k+1}) [(-1)^{n-k} e^{-iλ} (β+k+1)_{n-k} - e^{iλ} (α+k+1)_{n-k}]"
            }
            MethodId::J3F1 => {
                "(1/iλ)[(-1)^{n+1} e^{-iλ} A_n^{(β,α)}(-z) + e^{iλ} A_n^{(α,β)}(z)], \
                 A_n^{(a,b)}(t) = (a+1)_n/n! 3F1(n+a+b+1, -n, 1; a+1; 1/t)"
            }
            MethodId::JLambda0 => "Σ_k c_k (1+(-1)^k)/(k+1) over the exact monomial coefficients",
            MethodId::GEk => {
                "2 (2ν)_n e^{iλ} Σ 2^{2k} (n+2ν)_k (ν)_k/((n-k)! (2ν)_{2k}) [e^{-z} E_k(z) - 1] / (-z)^{k+1}"
            }
            MethodId::GClosed => {
                "2 (2ν)_n (ν)_n/(2ν)_{2n} Σ 2^{2k} (n+2ν)_k (2ν+2k)_{2n-2k}/((n-k)! (ν+k)_{n-k}) \
                 [(-1)^{n-k} e^{-iλ} - e^{iλ}] / (-z)^{k+1}"
            }
            MethodId::G3F1 => {
                "(2ν)_n/(iλ n!) [(-1)^{n+1} e^{-iλ} 3F1(n+2ν, -n, 1; ν+1/2; -1/z) \
                 + e^{iλ} 3F1(n+2ν, -n, 1; ν+1/2; 1/z)]"
            }
            MethodId::UEk => "e^{iλ} Σ 2^{2k+1} k! C(n+k+1, n-k) [e^{-z} E_k(z) - 1] / (-z)^{k+1}",
            MethodId::UClosed => "Σ 2^{2k+1} (n+k+1)! k!/((2k+1)! (n-k)!) [(-1)^{n-k} e^{-iλ} - e^{iλ}] / (-z)^{k+1}",
            MethodId::TClosed => {
                "Σ (-1)^{k+1} n 2^k (n+k)! k!/((n-k)! (2k)! (n+k)) [(-1)^{n-k} e^{-iλ} - e^{iλ}] / (iλ)^{k+1}"
            }
            MethodId::SmallLambdaSeries => "Σ_m (iλ)^m/m! ∫ x^m P(x) dx with exact moments",
            MethodId::ViaJacobiReduction => "scale × J-boundary of the equivalent Jacobi polynomial",
            MethodId::Operator => "P(-iD)(2 sinc λ), D^k sinc = A_k(1/λ) sin λ + B_k(1/λ) cos λ",
            MethodId::Oracle => "adaptive panel Gauss-Legendre quadrature of the defining integral",
        }
    }

    /// Methods defined for a family (shared ones included).
    pub fn for_family(family: &Family) -> Vec<MethodId> {
        use MethodId::*;
        let mut v = match family {
            Family::Legendre => vec![LCoeff, LBessel, LHyp, LClosed, ViaJacobiReduction],
            Family::Jacobi { .. } => vec![JEk, JBoundary, J3F1, JLambda0],
            Family::Gegenbauer { .. } => vec![GEk, GClosed, G3F1, ViaJacobiReduction],
            Family::ChebyshevU => vec![UEk, UClosed, ViaJacobiReduction],
            Family::ChebyshevT => vec![TClosed, ViaJacobiReduction],
        };
        v.extend([SmallLambdaSeries, Operator, Oracle]);
        v
    }

    /// The family's own printed forms, in the order they are usually
    /// displayed.
    pub fn named_forms(family: &Family) -> Vec<MethodId> {
        use MethodId::*;
        match family {
            Family::Legendre => vec![LCoeff, LBessel, LHyp, LClosed],
            Family::Jacobi { .. } => vec![JEk, JBoundary, J3F1],
            Family::Gegenbauer { .. } => vec![GEk, GClosed, G3F1],
            Family::ChebyshevU => vec![UEk, UClosed],
            Family::ChebyshevT => vec![TClosed],
        }
    }

    /// Closed-form methods of a family (the ones a verdict is reported for).
    pub fn closed_forms(family: &Family) -> Vec<MethodId> {
        Self::for_family(family)
            .into_iter()
            .filter(|m| !matches!(m, MethodId::SmallLambdaSeries | MethodId::Oracle | MethodId::JLambda0))
            .collect()
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("small-λ-series") {
            return Ok(MethodId::SmallLambdaSeries);
        }
        MethodId::ALL
            .iter()
            .copied()
            .find(|m| m.as_str().eq_ignore_ascii_case(t))
            .ok_or_else(|| param(format!("unknown method '{s}'")))
    }
}

/// Diagnostic flags attached to a result.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Flags(u8);

impl Flags {
    pub const SMALL_LAMBDA_BRANCH: Flags = Flags(1);
    pub const CANCELLATION_WARNING: Flags = Flags(2);
    pub const INEXACT_PARAMETERS: Flags = Flags(4);
    pub const PAPER_FORMULA_DISCREPANCY: Flags = Flags(8);

    const NAMES: [(Flags, &'static str); 4] = [
        (Flags::SMALL_LAMBDA_BRANCH, "small-lambda-branch"),
        (Flags::CANCELLATION_WARNING, "cancellation-warning"),
        (Flags::INEXACT_PARAMETERS, "inexact-parameters"),
        (Flags::PAPER_FORMULA_DISCREPANCY, "paper-formula-discrepancy"),
    ];

    pub fn empty() -> Self {
        Flags(0)
    }

    pub fn contains(self, other: Flags) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn insert(&mut self, other: Flags) {
        self.0 |= other.0;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Names of the set flags in a fixed order.
    pub fn names(self) -> Vec<&'static str> {
        Self::NAMES
            .iter()
            .filter(|(f, _)| self.contains(*f))
            .map(|(_, n)| *n)
            .collect()
    }
}

impl std::ops::BitOr for Flags {
    type Output = Flags;
    fn bitor(self, rhs: Flags) -> Flags {
        Flags(self.0 | rhs.0)
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join("|"))
    }
}

/// A transform value with provenance and diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct TransformResult<T> {
    pub value: Complex<T>,
    pub method: MethodId,
    pub est_rel_err: f64,
    pub flags: Flags,
}

impl<T: Real> TransformResult<T> {
    pub(crate) fn new(value: Complex<T>, method: MethodId, est_rel_err: f64, mut flags: Flags) -> Self {
        if est_rel_err > CANCELLATION_WARNING_THRESHOLD {
            flags.insert(Flags::CANCELLATION_WARNING);
        }
        TransformResult {
            value,
            method,
            est_rel_err,
            flags,
        }
    }

    /// Rounds to `f64`; the error estimate absorbs the final rounding.
    pub fn to_f64(&self) -> TransformResult<f64> {
        let value = complex_to_f64(self.value);
        let est = self.est_rel_err.max(if value == Complex::zero() {
            0.0
        } else {
            f64::EPSILON / 2.0
        });
        TransformResult {
            value,
            method: self.method,
            est_rel_err: est,
            flags: self.flags,
        }
    }
}

fn check_lambda<T: Real>(lambda: T) -> Result<()> {
    if lambda.is_finite() {
        Ok(())
    } else {
        Err(param("λ must be finite"))
    }
}

/// Flags every result for `spec` carries.
pub(crate) fn base_flags(spec: &FamilySpec) -> Flags {
    if spec.has_exact_params() {
        Flags::empty()
    } else {
        Flags::INEXACT_PARAMETERS
    }
}

fn lambda_rational<T: Real>(lambda: T) -> Result<BigRational> {
    lambda.to_rational().ok_or_else(|| param("λ must be finite"))
}

/// Exact-moment series at any λ; flagged as the small-λ branch.
pub fn hat_small_lambda<T: Real>(spec: &FamilySpec, lambda: T) -> Result<TransformResult<T>> {
    spec.validate()?;
    check_lambda(lambda)?;
    let coeffs = monomial_coefficients(spec)?;
    let s = moment_series_exact(&coeffs, &lambda_rational(lambda)?)?;
    let value = Complex::new(T::from_rational(&s.re), T::from_rational(&s.im));
    let rounding = if value == Complex::zero() {
        0.0
    } else {
        T::epsilon().to_f64_lossy()
    };
    Ok(TransformResult::new(
        value,
        MethodId::SmallLambdaSeries,
        s.est_rel_err + rounding,
        base_flags(spec) | Flags::SMALL_LAMBDA_BRANCH,
    ))
}

/// Value of the printed λ = 0 Jacobi display
/// `(n+α+β+1)/2 · [C(α+n, n−1) − (−1)^{n−1} C(β+n, n−1)]`.
pub fn jacobi_zero_printed(n: usize, alpha: &BigRational, beta: &BigRational) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let nn = int_rational(n as i64);
    let pre = (&nn + alpha + beta + int_rational(1)) / int_rational(2);
    let a = binomial_rational(&(alpha + &nn), n - 1);
    let mut b = binomial_rational(&(beta + &nn), n - 1);
    if (n - 1) % 2 == 1 {
        b = -b;
    }
    pre * (a - b)
}

/// Antiderivative form `2/(n+α+β) · [C(α+n, n+1) − (−1)^{n+1} C(β+n, n+1)]`
/// of `∫ P_n^{(α,β)}`, valid for `n ≥ 1` and `n+α+β ≠ 0`.
pub fn jacobi_zero_antiderivative(n: usize, alpha: &BigRational, beta: &BigRational) -> Option<BigRational> {
    if n == 0 {
        return Some(int_rational(2));
    }
    let nn = int_rational(n as i64);
    let s = &nn + alpha + beta;
    if s.is_zero() {
        return None;
    }
    let a = binomial_rational(&(alpha + &nn), n + 1);
    let mut b = binomial_rational(&(beta + &nn), n + 1);
    if (n + 1) % 2 == 1 {
        b = -b;
    }
    Some(int_rational(2) / s * (a - b))
}

/// `∫ P_n^{(α,β)}(x) dx` by exact moments. The result carries
/// [`Flags::PAPER_FORMULA_DISCREPANCY`] when the printed λ = 0 display
/// disagrees with it.
pub fn jacobi_hat_zero<T: Real>(n: usize, alpha: f64, beta: f64) -> Result<TransformResult<T>> {
    let spec = FamilySpec::jacobi(n, alpha, beta)?;
    let coeffs = monomial_coefficients(&spec)?;
    let exact = coeffs.moment(0);
    let (p, _) = spec.exact_params();
    let mut flags = base_flags(&spec);
    if jacobi_zero_printed(n, &p[0], &p[1]) != exact {
        flags.insert(Flags::PAPER_FORMULA_DISCREPANCY);
    }
    let value = Complex::new(T::from_rational(&exact), T::zero());
    let err = if exact.is_zero() {
        0.0
    } else {
        T::epsilon().to_f64_lossy()
    };
    Ok(TransformResult::new(value, MethodId::JLambda0, err, flags))
}

/// Family parameters as scalars, read through their exact rationals.
fn params_as<T: Real>(spec: &FamilySpec) -> Vec<T> {
    spec.exact_params().0.iter().map(T::from_rational).collect()
}

/// Closed form `method` at `|λ| ≥ τ(n)`; no routing.
fn evaluate_form<T: Real>(spec: &FamilySpec, lambda: T, method: MethodId) -> Result<FormValue<T>> {
    use MethodId::*;
    let n = spec.n;
    let p = params_as::<T>(spec);
    Ok(match (method, spec.family) {
        (LCoeff, Family::Legendre) => l_coeff(n, lambda)?,
        (LBessel, Family::Legendre) => l_bessel(n, lambda)?,
        (LHyp, Family::Legendre) => l_hyp(n, lambda),
        (LClosed, Family::Legendre) => l_closed(n, lambda),
        (JEk, Family::Jacobi { .. }) => j_ek(n, p[0], p[1], lambda),
        (JBoundary, Family::Jacobi { .. }) => j_boundary(n, p[0], p[1], lambda),
        (J3F1, Family::Jacobi { .. }) => j_3f1(n, p[0], p[1], lambda)?,
        (GEk, Family::Gegenbauer { .. }) => g_ek(n, p[0], lambda),
        (GClosed, Family::Gegenbauer { .. }) => g_closed(n, p[0], lambda),
        (G3F1, Family::Gegenbauer { .. }) => g_3f1(n, p[0], lambda)?,
        (UEk, Family::ChebyshevU) => u_ek(n, lambda),
        (UClosed, Family::ChebyshevU) => u_closed(n, lambda),
        (TClosed, Family::ChebyshevT) => t_closed(n, lambda)?,
        (ViaJacobiReduction, f) if !matches!(f, Family::Jacobi { .. }) => {
            let (jspec, scale) = reduce_to_jacobi_exact(spec)?;
            let jp = params_as::<T>(&jspec);
            let v = j_boundary(n, jp[0], jp[1], lambda);
            FormValue {
                value: v.value * T::from_rational(&scale),
                est_rel_err: v.est_rel_err,
            }
        }
        (m, _) => {
            return Err(param(format!(
                "method {m} does not apply to the {} family",
                spec.family.name()
            )));
        }
    })
}

fn routes_to_series<T: Real>(spec: &FamilySpec, lambda: T) -> bool {
    lambda.abs().to_f64_lossy() < tau(spec.n)
}

/// Transform of `spec` by a specific method.
///
/// `λ = 0` and `|λ| < τ(n)` are routed to the exact-moment series (or, for
/// Jacobi at λ = 0, to [`jacobi_hat_zero`]) whatever method is requested;
/// the result then carries [`Flags::SMALL_LAMBDA_BRANCH`].
pub fn hat_method<T: Real>(spec: &FamilySpec, lambda: T, method: MethodId) -> Result<TransformResult<T>> {
    spec.validate()?;
    check_lambda(lambda)?;
    if !MethodId::for_family(&spec.family).contains(&method) {
        return Err(param(format!(
            "method {method} does not apply to the {} family",
            spec.family.name()
        )));
    }
    match method {
        MethodId::Oracle => {
            let q = crate::oracle::quad_hat_spec(spec, lambda.to_f64_lossy(), crate::oracle::DEFAULT_TOL)?;
            if !q.converged {
                return Err(Error::Evaluation {
                    message: "quadrature budget exhausted".into(),
                    partial: q.value,
                    estimate: q.abs_err_est,
                });
            }
            let mag = q.value.norm();
            let rel = if mag > 0.0 { q.abs_err_est / mag } else { q.abs_err_est };
            let value = Complex::new(T::lit(q.value.re), T::lit(q.value.im));
            return Ok(TransformResult::new(value, MethodId::Oracle, rel, base_flags(spec)));
        }
        MethodId::SmallLambdaSeries => return hat_small_lambda(spec, lambda),
        MethodId::Operator
            if !routes_to_series(spec, lambda) && lambda.abs().to_f64_lossy() >= crate::operator::TAU_OP =>
        {
            return crate::operator::operator_hat(spec, lambda);
        }
        MethodId::JLambda0 if lambda != T::zero() => {
            return Err(param("J-lambda0 is defined only at λ = 0"));
        }
        _ => {}
    }
    if lambda == T::zero() {
        if let Family::Jacobi { alpha, beta } = spec.family {
            let mut r = jacobi_hat_zero::<T>(spec.n, alpha, beta)?;
            r.flags.insert(Flags::SMALL_LAMBDA_BRANCH);
            return Ok(r);
        }
    }
    if routes_to_series(spec, lambda) {
        return hat_small_lambda(spec, lambda);
    }
    let v = evaluate_form(spec, lambda, method)?;
    Ok(TransformResult::new(v.value, method, v.est_rel_err, base_flags(spec)))
}

/// The dispatcher's preferred closed form and its cross-check partner.
pub fn default_methods(family: &Family) -> (MethodId, MethodId) {
    match family {
        Family::Legendre => (MethodId::LClosed, MethodId::LBessel),
        Family::Jacobi { .. } => (MethodId::JBoundary, MethodId::J3F1),
        Family::Gegenbauer { .. } => (MethodId::GClosed, MethodId::ViaJacobiReduction),
        Family::ChebyshevU => (MethodId::UClosed, MethodId::UEk),
        Family::ChebyshevT => (MethodId::TClosed, MethodId::ViaJacobiReduction),
    }
}

/// Automatic evaluation.
///
/// Below `τ(n)` the exact-moment series is used. Above it the family's
/// boundary-type closed form is evaluated and cross-checked against a
/// second form; the larger of the two error indications is reported. When
/// the closed form's own estimate shows more cancellation than the target
/// precision tolerates (large `n` close to the switch), the exact-moment
/// series is used instead.
pub fn hat_auto<T: Real>(spec: &FamilySpec, lambda: T) -> Result<TransformResult<T>> {
    spec.validate()?;
    check_lambda(lambda)?;
    if lambda == T::zero() {
        if let Family::Jacobi { alpha, beta } = spec.family {
            let mut r = jacobi_hat_zero::<T>(spec.n, alpha, beta)?;
            r.flags.insert(Flags::SMALL_LAMBDA_BRANCH);
            return Ok(r);
        }
    }
    if lambda == T::zero() || routes_to_series(spec, lambda) {
        return hat_small_lambda(spec, lambda);
    }
    let (primary, second) = default_methods(&spec.family);
    let a = evaluate_form(spec, lambda, primary)?;
    let target = (64.0 * T::epsilon().to_f64_lossy()).max(1e-17);
    let lam = lambda.abs().to_f64_lossy();
    if a.est_rel_err > target && lam <= SERIES_FALLBACK_SLOPE * spec.n as f64 + 64.0 {
        let mut r = hat_small_lambda(spec, lambda)?;
        r.flags = base_flags(spec);
        return Ok(r);
    }
    let b = evaluate_form(spec, lambda, second)?;
    let mag = cabs(a.value).to_f64_lossy();
    let diff = cabs(a.value - b.value).to_f64_lossy();
    let cross = if mag > 0.0 { diff / mag } else { diff };
    let est = a.est_rel_err.max(cross.clamp(0.0, 1.0));
    Ok(TransformResult::new(a.value, primary, est, base_flags(spec)))
}

/// [`hat_auto`] evaluated in double-double and rounded to `f64`.
pub fn hat(spec: &FamilySpec, lambda: f64) -> Result<TransformResult<f64>> {
    Ok(hat_auto::<Dd>(spec, Dd::from(lambda))?.to_f64())
}

/// [`hat_method`] evaluated in double-double and rounded to `f64`.
pub fn hat_with(spec: &FamilySpec, lambda: f64, method: MethodId) -> Result<TransformResult<f64>> {
    Ok(hat_method::<Dd>(spec, Dd::from(lambda), method)?.to_f64())
}

/// Legendre transform by `method`.
pub fn legendre_hat<T: Real>(n: usize, lambda: T, method: MethodId) -> Result<TransformResult<T>> {
    hat_method(&FamilySpec::legendre(n)?, lambda, method)
}

/// Jacobi transform (no weight in the integrand) by `method`.
pub fn jacobi_hat<T: Real>(n: usize, alpha: f64, beta: f64, lambda: T, method: MethodId) -> Result<TransformResult<T>> {
    hat_method(&FamilySpec::jacobi(n, alpha, beta)?, lambda, method)
}

/// Gegenbauer transform by `method`.
pub fn gegenbauer_hat<T: Real>(n: usize, nu: f64, lambda: T, method: MethodId) -> Result<TransformResult<T>> {
    hat_method(&FamilySpec::gegenbauer(n, nu)?, lambda, method)
}

/// Chebyshev `U_n` transform by `method`.
pub fn chebyshev_u_hat<T: Real>(n: usize, lambda: T, method: MethodId) -> Result<TransformResult<T>> {
    hat_method(&FamilySpec::chebyshev_u(n)?, lambda, method)
}

/// Chebyshev `T_n` transform by the `T-closed` form.
pub fn chebyshev_t_hat<T: Real>(n: usize, lambda: T) -> Result<TransformResult<T>> {
    hat_method(&FamilySpec::chebyshev_t(n)?, lambda, MethodId::TClosed)
}

/// Exact Taylor coefficients `(μ_0, μ_1, μ_2/2)` of the transform, i.e.
/// `hat(λ) = μ_0 + iλ μ_1 − λ² μ_2/2 + O(λ³)`.
pub fn taylor_through_order_two(spec: &FamilySpec) -> Result<[BigRational; 3]> {
    let c = monomial_coefficients(spec)?;
    Ok([c.moment(0), c.moment(1), c.moment(2) / int_rational(2)])
}

/// `hat(λ)` from its exact order-2 Taylor polynomial, in `f64`.
pub fn taylor_value_order_two(spec: &FamilySpec, lambda: f64) -> Result<Complex64> {
    let [m0, m1, m2] = taylor_through_order_two(spec)?;
    let f = crate::scalar::rational_to_f64;
    Ok(Complex::new(f(&m0) - lambda * lambda * f(&m2), lambda * f(&m1)))
}
