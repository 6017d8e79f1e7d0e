//! Taylor series of the transform in λ with exact moments.
//!
//! `∫ P(x) e^{iλx} dx = Σ_m (iλ)^m/m! · μ_m` with `μ_m = ∫ x^m P(x) dx`.
//! The moments are exact rationals, so the only error is the fixed-point
//! rounding of the partial sums, and the working precision is raised until
//! the result is known to the requested relative accuracy. At λ = 0 the
//! value is the exact rational `μ_0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::log2_abs;
use crate::mp::{fixed_log2, fixed_to_f64, to_fixed};
use crate::polyfamilies::RationalCoeffVector;

/// Relative accuracy requested from the series, in bits.
pub const SERIES_TARGET_BITS: f64 = 112.0;
/// Largest working precision tried before giving up.
const MAX_BITS: u32 = 1 << 16;

/// Series value as exact rationals, with a bound on its relative error.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub re: BigRational,
    pub im: BigRational,
    pub est_rel_err: f64,
    pub terms: usize,
}

/// Exact moment `μ_0 = ∫ P`.
pub fn zeroth_moment(coeffs: &RationalCoeffVector) -> BigRational {
    coeffs.moment(0)
}

/// Sum of the series at the exact (binary) value `lambda`.
pub fn moment_series_exact(coeffs: &RationalCoeffVector, lambda: &BigRational) -> Result<SeriesValue> {
    if lambda.is_zero() {
        return Ok(SeriesValue {
            re: zeroth_moment(coeffs),
            im: BigRational::zero(),
            est_rel_err: 0.0,
            terms: 1,
        });
    }
    let n = coeffs.degree();
    let lam_log2 = log2_abs(lambda);
    let lam = lam_log2.exp2();
    let sum_abs = coeffs.abs_sum();
    let coeff_log2 = if sum_abs.is_zero() { 0.0 } else { log2_abs(&sum_abs) };
    let mut prec = (80.0 + lam * std::f64::consts::LOG2_E).ceil() as u32;
    loop {
        let pass = series_pass(coeffs, lambda, lam, coeff_log2, prec)?;
        let val_log2 = fixed_log2(&pass.re, prec).max(fixed_log2(&pass.im, prec));
        let err_log2 = ((pass.terms + 2) as f64 * (n + 3) as f64).log2()
            + pass.peak_power_log2.max(0.0)
            + pass.peak_moment_log2.max(0.0)
            + 2.0
            - prec as f64;
        let deficit = if val_log2.is_finite() {
            err_log2 - val_log2 + SERIES_TARGET_BITS
        } else {
            64.0
        };
        if deficit <= 0.0 {
            let den = BigInt::one() << prec as usize;
            return Ok(SeriesValue {
                re: BigRational::new(pass.re, den.clone()),
                im: BigRational::new(pass.im, den),
                est_rel_err: (err_log2 - val_log2).exp2(),
                terms: pass.terms,
            });
        }
        let next = prec + deficit.ceil() as u32 + 16;
        if next > MAX_BITS {
            return Err(Error::Evaluation {
                message: format!("exact-moment series needs more than {MAX_BITS} bits"),
                partial: num_complex::Complex::new(fixed_to_f64(&pass.re, prec), fixed_to_f64(&pass.im, prec)),
                estimate: (err_log2 - val_log2).exp2(),
            });
        }
        prec = next;
    }
}

struct Pass {
    re: BigInt,
    im: BigInt,
    terms: usize,
    peak_power_log2: f64,
    peak_moment_log2: f64,
}

fn series_pass(
    coeffs: &RationalCoeffVector,
    lambda: &BigRational,
    lam: f64,
    coeff_log2: f64,
    prec: u32,
) -> Result<Pass> {
    let w = prec as usize;
    // 2 c_k at precision prec
    let two = BigRational::from_integer(BigInt::from(2));
    let cfix: Vec<BigInt> = coeffs.coeffs().iter().map(|c| to_fixed(&(c * &two), prec)).collect();
    let lfix = to_fixed(&lambda.abs(), prec);
    let negative = lambda.is_negative();
    let mut power = BigInt::one() << w;
    let mut power_log2 = 0.0f64;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut peak_power = 0.0f64;
    let mut peak_moment = f64::NEG_INFINITY;
    let mut m: usize = 0;
    loop {
        if m > 1_000_000 {
            return Err(Error::Internal("exact-moment series failed to terminate".into()));
        }
        let mut mu = BigInt::zero();
        for (k, c) in cfix.iter().enumerate() {
            if (m + k).is_multiple_of(2) && !c.is_zero() {
                mu += c / BigInt::from(m + k + 1);
            }
        }
        peak_moment = peak_moment.max(fixed_log2(&mu, prec));
        let term = (&power * &mu) >> w;
        // (iλ)^m = i^m |λ|^m sign^m
        let q = if negative { (4 - m % 4) % 4 } else { m % 4 };
        match q {
            0 => re += term,
            1 => im += term,
            2 => re -= term,
            _ => im -= term,
        }
        power = ((&power * &lfix) >> w) / BigInt::from(m + 1);
        power_log2 += (lam / (m + 1) as f64).log2();
        peak_power = peak_power.max(power_log2);
        m += 1;
        if m as f64 > lam && power_log2 + coeff_log2 + 2.0 < -(prec as f64) - 4.0 {
            break;
        }
    }
    Ok(Pass {
        re,
        im,
        terms: m,
        peak_power_log2: peak_power,
        peak_moment_log2: peak_moment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfamilies::{monomial_coefficients, FamilySpec};
    use crate::scalar::rational_to_f64;

    #[test]
    fn constant_polynomial_gives_sinc() {
        let c = monomial_coefficients(&FamilySpec::legendre(0).unwrap()).unwrap();
        for &l in &[1e-6, 0.3, -2.0, 7.5, 40.0] {
            let v = moment_series_exact(&c, &BigRational::from_float(l).unwrap()).unwrap();
            let want = 2.0 * f64::sin(l) / l;
            assert!(
                (rational_to_f64(&v.re) - want).abs() <= 1e-15 * want.abs().max(1e-3),
                "λ={l}"
            );
            assert!(v.im.is_zero());
        }
    }

    #[test]
    fn exact_at_zero() {
        let c = monomial_coefficients(&FamilySpec::jacobi(1, 1.0, 0.0).unwrap()).unwrap();
        let v = moment_series_exact(&c, &BigRational::zero()).unwrap();
        assert_eq!(v.re, BigRational::one());
        let c = monomial_coefficients(&FamilySpec::legendre(2).unwrap()).unwrap();
        assert!(moment_series_exact(&c, &BigRational::zero()).unwrap().re.is_zero());
    }

    #[test]
    fn tiny_values_keep_relative_accuracy() {
        // P_n transform ~ 2 i^n λ^n / (2n+1)!! for small λ
        let n = 12;
        let c = monomial_coefficients(&FamilySpec::legendre(n).unwrap()).unwrap();
        let l: f64 = 1e-3;
        let v = moment_series_exact(&c, &BigRational::from_float(l).unwrap()).unwrap();
        let mut df = 1.0;
        for k in 1..=n {
            df *= (2 * k + 1) as f64;
        }
        let want = 2.0 * l.powi(n as i32) / df;
        assert!((rational_to_f64(&v.re) / want - 1.0).abs() < 1e-6);
        assert!(v.est_rel_err < 1e-30);
    }
}
