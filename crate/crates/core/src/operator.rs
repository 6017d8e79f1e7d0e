//! Transforms through derivatives of `sinc`.
//!
//! `∫ x^k e^{iλx} dx = (−iD)^k (2 sinc λ)` with `D = d/dλ`, so for a
//! polynomial `P` the transform is `P(−iD)(2 sinc λ)`. Each derivative is
//! `D^k sinc = A_k(1/λ) sin λ + B_k(1/λ) cos λ` with integer polynomials
//! `A_k, B_k` in `1/λ`. All polynomial work is exact; `sin λ` and `cos λ`
//! are evaluated once, in fixed point, at a precision raised until the
//! cancellation between the two products is resolved.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::log2_abs;
use crate::mp::sin_cos_fixed;
use crate::polyfamilies::{monomial_coefficients, FamilySpec};
use crate::scalar::{int_rational, Real};
use crate::transforms::{base_flags, MethodId, TransformResult};

/// Smallest `|λ|` accepted by the operator path.
pub const TAU_OP: f64 = 0.5;
/// Relative accuracy, in bits, of the fixed-point trig combination.
const TARGET_BITS: f64 = 112.0;
const MAX_BITS: u32 = 1 << 16;

/// `Σ_p c_p λ^{−p}` over powers `p ≥ 1`; index `p` of the vector holds
/// `c_p` and index 0 is always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseLambdaPoly {
    coeffs: Vec<BigRational>,
}

impl InverseLambdaPoly {
    pub fn zero() -> Self {
        InverseLambdaPoly {
            coeffs: vec![BigRational::zero()],
        }
    }

    /// `c λ^{−p}`.
    pub fn monomial(p: usize, c: BigRational) -> Self {
        assert!(p >= 1, "powers of 1/λ start at 1");
        let mut out = Self::zero();
        out.coeffs.resize(p + 1, BigRational::zero());
        out.coeffs[p] = c;
        out
    }

    /// Coefficient of `λ^{−p}`.
    pub fn coeff(&self, p: usize) -> BigRational {
        self.coeffs.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Highest power with a nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero `(p, c_p)` pairs in increasing `p`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// `d/dλ`, acting as `c λ^{−p} ↦ −p c λ^{−p−1}`.
    pub fn derivative(&self) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (p, c) in self.terms() {
            out[p + 1] = -(c * int_rational(p as i64));
        }
        InverseLambdaPoly { coeffs: out }.trimmed()
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &BigRational) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigRational::zero());
        }
        for (p, c) in other.terms() {
            self.coeffs[p] += c * scale;
        }
    }

    /// Value at `u = 1/λ`, exactly.
    pub fn eval_at_inverse(&self, u: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    fn trimmed(mut self) -> Self {
        let d = self.degree();
        self.coeffs.truncate(d + 1);
        self
    }
}

impl std::ops::Sub for &InverseLambdaPoly {
    type Output = InverseLambdaPoly;
    fn sub(self, rhs: &InverseLambdaPoly) -> InverseLambdaPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out.trimmed()
    }
}

impl std::ops::Add for &InverseLambdaPoly {
    type Output = InverseLambdaPoly;
    fn add(self, rhs: &InverseLambdaPoly) -> InverseLambdaPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigRational::one());
        out.trimmed()
    }
}

impl fmt::Display for InverseLambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(p, c)| format!("{c}·λ^-{p}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `D^n sinc λ = a(1/λ) sin λ + b(1/λ) cos λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SincDerivativePair {
    pub a: InverseLambdaPoly,
    pub b: InverseLambdaPoly,
}

/// `(A_k, B_k)` for `k = 0..=n` from `A_{k+1} = A_k' − B_k`,
/// `B_{k+1} = A_k + B_k'`, `A_0 = 1/λ`, `B_0 = 0`.
pub fn ab_sequence(n: usize) -> Result<Vec<SincDerivativePair>> {
    crate::config::check_degree(n)?;
    let mut out = Vec::with_capacity(n + 1);
    let mut pair = SincDerivativePair {
        a: InverseLambdaPoly::monomial(1, BigRational::one()),
        b: InverseLambdaPoly::zero(),
    };
    for _ in 0..n {
        let a = &pair.a.derivative() - &pair.b;
        let b = &pair.a + &pair.b.derivative();
        out.push(pair);
        pair = SincDerivativePair { a, b };
    }
    out.push(pair);
    Ok(out)
}

/// `(A_n, B_n)`.
pub fn ab_polynomials(n: usize) -> Result<SincDerivativePair> {
    Ok(ab_sequence(n)?.pop().expect("nonempty"))
}

/// The pair read off `D^n sinc λ = Σ_j n!/(n−j)! sin(λ + (n+j)π/2) / λ^{j+1}`.
pub fn explicit_pair(n: usize) -> Result<SincDerivativePair> {
    crate::config::check_degree(n)?;
    let mut a = InverseLambdaPoly::zero();
    let mut b = InverseLambdaPoly::zero();
    let mut falling = BigInt::one();
    for j in 0..=n {
        let c = BigRational::from_integer(falling.clone());
        // sin(λ + qπ/2) = cos(qπ/2) sin λ + sin(qπ/2) cos λ
        match (n + j) % 4 {
            0 => a.add_scaled(&InverseLambdaPoly::monomial(j + 1, c), &BigRational::one()),
            1 => b.add_scaled(&InverseLambdaPoly::monomial(j + 1, c), &BigRational::one()),
            2 => a.add_scaled(&InverseLambdaPoly::monomial(j + 1, c), &-BigRational::one()),
            _ => b.add_scaled(&InverseLambdaPoly::monomial(j + 1, c), &-BigRational::one()),
        }
        falling *= BigInt::from(n - j);
    }
    Ok(SincDerivativePair {
        a: a.trimmed(),
        b: b.trimmed(),
    })
}

fn check_lambda(lambda: f64) -> Result<BigRational> {
    if !lambda.is_finite() {
        return Err(crate::error::param("λ must be finite"));
    }
    if lambda.abs() < TAU_OP {
        return Err(Error::Domain(format!(
            "|λ| = {} is below {TAU_OP}; use the small-λ series instead",
            lambda.abs()
        )));
    }
    Ok(BigRational::from_float(lambda).expect("finite"))
}

/// `Σ_r (s_r sin λ + c_r cos λ)` for each pair `(s_r, c_r)`, to
/// `TARGET_BITS` relative to the largest result. Returns the values and the
/// achieved relative error bound.
fn trig_combinations(pairs: &[(BigRational, BigRational)], lambda: &BigRational) -> Result<(Vec<BigRational>, f64)> {
    let size = pairs
        .iter()
        .flat_map(|(s, c)| [s, c])
        .filter(|x| !x.is_zero())
        .map(log2_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if size == f64::NEG_INFINITY {
        return Ok((vec![BigRational::zero(); pairs.len()], 0.0));
    }
    let mut prec = (TARGET_BITS + 32.0) as u32;
    loop {
        let (s, c) = sin_cos_fixed(lambda, prec);
        let den = BigRational::from_integer(BigInt::one() << prec as usize);
        let sr = BigRational::from_integer(s) / &den;
        let cr = BigRational::from_integer(c) / &den;
        let values: Vec<BigRational> = pairs.iter().map(|(a, b)| a * &sr + b * &cr).collect();
        // each fixed-point trig value is within 4 units of the last place
        let err_log2 = size + 3.0 - prec as f64;
        let top = values
            .iter()
            .filter(|v| !v.is_zero())
            .map(log2_abs)
            .fold(f64::NEG_INFINITY, f64::max);
        let deficit = err_log2 - top + TARGET_BITS;
        if deficit <= 0.0 {
            return Ok((values, (err_log2 - top).exp2()));
        }
        let next = prec + deficit.min(1e6).ceil() as u32 + 16;
        if next > MAX_BITS {
            return Err(Error::Evaluation {
                message: "sinc-derivative combination needs more precision than the configured cap".into(),
                partial: Complex::new(values.first().map(crate::scalar::rational_to_f64).unwrap_or(0.0), 0.0),
                estimate: (err_log2 - top).exp2(),
            });
        }
        prec = next;
    }
}

/// `D^n sinc λ` for `|λ| ≥ 1/2`, from the explicit sum, with the trig
/// factors applied once after exact accumulation.
pub fn sinc_derivative(n: usize, lambda: f64) -> Result<f64> {
    let l = check_lambda(lambda)?;
    let pair = explicit_pair(n)?;
    let u = l.recip();
    let (v, _) = trig_combinations(&[(pair.a.eval_at_inverse(&u), pair.b.eval_at_inverse(&u))], &l)?;
    Ok(crate::scalar::rational_to_f64(&v[0]))
}

/// `A_n(1/λ) sin λ + B_n(1/λ) cos λ`, the same derivative from the
/// recurrence polynomials.
pub fn sinc_derivative_ab(n: usize, lambda: f64) -> Result<f64> {
    let l = check_lambda(lambda)?;
    let pair = ab_polynomials(n)?;
    let u = l.recip();
    let (v, _) = trig_combinations(&[(pair.a.eval_at_inverse(&u), pair.b.eval_at_inverse(&u))], &l)?;
    Ok(crate::scalar::rational_to_f64(&v[0]))
}

/// The four exact polynomials of `P(−iD)(2 sinc λ)`:
/// `(Re·sin, Re·cos, Im·sin, Im·cos)`.
pub fn operator_polynomials(spec: &FamilySpec) -> Result<[InverseLambdaPoly; 4]> {
    spec.validate()?;
    let c = monomial_coefficients(spec)?;
    let seq = ab_sequence(spec.n)?;
    let mut out = [
        InverseLambdaPoly::zero(),
        InverseLambdaPoly::zero(),
        InverseLambdaPoly::zero(),
        InverseLambdaPoly::zero(),
    ];
    for (k, ck) in c.coeffs().iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        // 2 c_k (−i)^k
        let two_c = ck * int_rational(2);
        let (slot, sign) = match k % 4 {
            0 => (0, 1),
            1 => (2, -1),
            2 => (0, -1),
            _ => (2, 1),
        };
        let scale = two_c * int_rational(sign);
        out[slot].add_scaled(&seq[k].a, &scale);
        out[slot + 1].add_scaled(&seq[k].b, &scale);
    }
    Ok(out.map(InverseLambdaPoly::trimmed))
}

/// `P(−iD)(2 sinc λ)` for `|λ| ≥ 1/2`.
pub fn operator_hat<T: Real>(spec: &FamilySpec, lambda: T) -> Result<TransformResult<T>> {
    let l = check_lambda(lambda.to_f64_lossy())?;
    let l = lambda.to_rational().unwrap_or(l);
    let polys = operator_polynomials(spec)?;
    let u = l.recip();
    let at: Vec<BigRational> = polys.iter().map(|p| p.eval_at_inverse(&u)).collect();
    let (v, err) = trig_combinations(&[(at[0].clone(), at[1].clone()), (at[2].clone(), at[3].clone())], &l)?;
    let value = Complex::new(T::from_rational(&v[0]), T::from_rational(&v[1]));
    let rounding = if v.iter().all(Zero::is_zero) {
        0.0
    } else {
        T::epsilon().to_f64_lossy()
    };
    Ok(TransformResult::new(
        value,
        MethodId::Operator,
        err + rounding,
        base_flags(spec),
    ))
}

/// Magnitude bound `Σ |c_p| |λ|^{−p}` of a polynomial at `λ`, for
/// conditioning reports.
pub fn abs_bound(p: &InverseLambdaPoly, lambda: f64) -> f64 {
    let u = 1.0 / lambda.abs();
    p.terms()
        .map(|(k, c)| crate::scalar::rational_to_f64(&c.abs()) * u.powi(k as i32))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(usize, i64)]) -> InverseLambdaPoly {
        let mut p = InverseLambdaPoly::zero();
        for &(k, c) in terms {
            p.add_scaled(&InverseLambdaPoly::monomial(k, int_rational(c)), &BigRational::one());
        }
        p.trimmed()
    }

    #[test]
    fn first_pairs() {
        let s = ab_sequence(2).unwrap();
        assert_eq!(s[0].a, poly(&[(1, 1)]));
        assert!(s[0].b.is_zero());
        assert_eq!(s[1].a, poly(&[(2, -1)]));
        assert_eq!(s[1].b, poly(&[(1, 1)]));
        assert_eq!(s[2].a, poly(&[(1, -1), (3, 2)]));
        assert_eq!(s[2].b, poly(&[(2, -2)]));
    }

    #[test]
    fn recurrence_matches_explicit_form_exactly() {
        for n in 0..=40 {
            let ab = ab_polynomials(n).unwrap();
            assert_eq!(ab, explicit_pair(n).unwrap(), "n={n}");
            assert!(ab.a.is_integral() && ab.b.is_integral());
        }
    }

    #[test]
    fn derivative_values() {
        for &l in &[0.5f64, 1.3, -4.0, 25.0] {
            let (s, c) = l.sin_cos();
            assert!((sinc_derivative(0, l).unwrap() - s / l).abs() < 1e-16);
            assert!((sinc_derivative(1, l).unwrap() - (c / l - s / (l * l))).abs() < 1e-15);
            let d2 = -s / l - 2.0 * c / (l * l) + 2.0 * s / (l * l * l);
            assert!((sinc_derivative(2, l).unwrap() - d2).abs() < 1e-14);
        }
        assert!(matches!(sinc_derivative(3, 0.2), Err(Error::Domain(_))));
    }

    #[test]
    fn operator_examples() {
        for &l in &[0.7f64, 3.0, 40.0] {
            let p0 = operator_hat(&FamilySpec::legendre(0).unwrap(), l).unwrap();
            assert!((p0.value.re - 2.0 * l.sin() / l).abs() < 1e-15 && p0.value.im == 0.0);
            let u1 = operator_hat(&FamilySpec::chebyshev_u(1).unwrap(), l).unwrap();
            let want = 4.0 * (l.sin() / (l * l) - l.cos() / l);
            assert!((u1.value.im - want).abs() < 1e-15 && u1.value.re == 0.0);
        }
        let a = operator_hat(&FamilySpec::legendre(3).unwrap(), 7.0).unwrap().value;
        let b = crate::transforms::hat(&FamilySpec::legendre(3).unwrap(), 7.0)
            .unwrap()
            .value;
        assert!((a - b).norm() < 1e-14 * b.norm());
    }
}
