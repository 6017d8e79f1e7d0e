//! Transform of the Jacobi polynomial times its weight,
//! `∫ (1−x)^α (1+x)^β P_n^{(α,β)}(x) e^{iλx} dx`.

use num_complex::Complex;
use num_rational::BigRational;

use crate::error::Result;
use crate::polyfamilies::FamilySpec;
use crate::scalar::int_rational;
use crate::specialfns::{beta as beta_fn, kummer_1f1_exact};
use crate::Complex64;

/// `X_n(λ; α, β) · ₁F₁(n+α+1; 2n+α+β+2; −2iλ)` with
/// `X_n = (iλ)^n e^{iλ}/n! · 2^{n+α+β+1} B(n+α+1, n+β+1)`.
///
/// The beta function is expanded as
/// `B(α+1, β+1) (α+1)_n (β+1)_n / (α+β+2)_{2n}` and folded together with
/// `(2λ)^n/n!` one factor at a time.
pub fn weighted_jacobi_hat(n: usize, alpha: f64, beta: f64, lambda: f64) -> Result<Complex64> {
    let spec = FamilySpec::jacobi(n, alpha, beta)?;
    if !lambda.is_finite() {
        return Err(crate::error::param("λ must be finite"));
    }
    let (params, _) = spec.exact_params();
    let weight_mass = 2f64.powf(alpha + beta + 1.0) * beta_fn(alpha + 1.0, beta + 1.0);
    if lambda == 0.0 {
        return Ok(Complex::new(if n == 0 { weight_mass } else { 0.0 }, 0.0));
    }
    let mut x = weight_mass;
    for j in 1..=n {
        let jf = j as f64;
        let s = alpha + beta + 2.0 * jf;
        x *= 2.0 * lambda * (alpha + jf) * (beta + jf) / (jf * s * (s + 1.0));
    }
    let prefactor = crate::scalar::i_pow::<f64>(n as i64) * Complex::from_polar(1.0, lambda) * x;
    let nn = int_rational(n as i64);
    let a: BigRational = &nn + &params[0] + int_rational(1);
    let b: BigRational = &nn * int_rational(2) + &params[0] + &params[1] + int_rational(2);
    let f = kummer_1f1_exact(&a, &b, Complex::new(0.0, -2.0 * lambda))?;
    Ok(prefactor * f)
}
