//! The closed-form sums, generic over the scalar type.
//!
//! With `z = 2iλ` every sum is one of three shapes:
//!
//! * partial-exponential sums `pre · Σ_k C_k (e^{−z}E_k(z) − 1)/(−z)^{k+1}`,
//! * boundary sums `pre · Σ_k [(−1)^{n−k} e^{−iλ} v_k − e^{iλ} u_k]/(−z)^{k+1}`,
//! * pairs of terminating `₃F₁` sums in `±1/z`.
//!
//! Coefficients are advanced by their term ratios so nothing overflows up to
//! the degree cap, and every piece goes through one compensated accumulator
//! whose cancellation ratio gives the error estimate. The forms are only
//! called for `|λ| ≥ τ(n)`, where `|z| ≥ n` keeps the forward recurrence
//! `ẽ_k = 1 + (k/z) ẽ_{k−1}` for `ẽ_k(z) = k! E_k(z)/z^k` contracting.

use num_complex::Complex;

use crate::error::Result;
use crate::numerics::{moment_kernel, ComplexAccumulator};
use crate::polyfamilies::{monomial_coefficients, FamilySpec};
use crate::scalar::{cabs, cis, i_pow, sign_pow, Real};
use crate::specialfns::{spherical_bessel_j, terminating_pfq_sum};

/// A closed-form value and its relative error estimate.
#[derive(Clone, Copy, Debug)]
pub struct FormValue<T> {
    pub value: Complex<T>,
    pub est_rel_err: f64,
}

fn finish<T: Real>(acc: &ComplexAccumulator<T>, pre: Complex<T>, n: usize) -> FormValue<T> {
    let eps = T::epsilon().to_f64_lossy();
    FormValue {
        value: acc.value() * pre,
        est_rel_err: (n + 2) as f64 * eps * acc.cancellation(),
    }
}

fn two<T: Real>() -> T {
    T::lit(2.0)
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `Σ_k C_k (e^{−z}E_k(z) − 1)/(−z)^{k+1}` accumulated term by term as
/// `(−1)^{k+1}/z · [e^{−z} ẽ_k(z) C_k/k! − C_k/z^k]`.
fn ek_sum<T: Real>(n: usize, c0: T, ratio: impl Fn(usize) -> T, lambda: T) -> ComplexAccumulator<T> {
    let z = Complex::new(T::zero(), two::<T>() * lambda);
    let zinv = z.inv();
    let emz = cis(-two::<T>() * lambda);
    let mut acc = ComplexAccumulator::new();
    let mut a = real(c0); // C_k / k!
    let mut b = real(c0); // C_k / z^k
    let mut e = real(T::one()); // ẽ_k(z)
    for k in 0..=n {
        if k > 0 {
            let r = ratio(k);
            a *= r / T::from_usize_lossy(k);
            b = b * zinv * r;
            e = real(T::one()) + e * zinv * T::from_usize_lossy(k);
        }
        let s: T = sign_pow(k + 1);
        acc.add(emz * e * a * zinv * s);
        acc.add(-(b * zinv * s));
    }
    acc
}

/// `Σ_k [(−1)^{n−k} e^{−iλ} v_k − e^{iλ} u_k]` where `u_k = u_0 Π r_u / (−z)`
/// and likewise for `v`, with `u_0`, `v_0` already divided by `−z`.
fn boundary_sum<T: Real>(
    n: usize,
    u0: T,
    ru: impl Fn(usize) -> T,
    v0: T,
    rv: impl Fn(usize) -> T,
    lambda: T,
) -> ComplexAccumulator<T> {
    let mzinv = Complex::new(T::zero(), two::<T>() * lambda).inv() * (-T::one());
    let e = cis(lambda);
    let ec = e.conj();
    let mut acc = ComplexAccumulator::new();
    let mut u = mzinv * u0;
    let mut v = mzinv * v0;
    for k in 0..=n {
        if k > 0 {
            u = u * mzinv * ru(k);
            v = v * mzinv * rv(k);
        }
        let s: T = sign_pow(n - k);
        acc.add(ec * v * s);
        acc.add(-(e * u));
    }
    acc
}

/// `(a+1)_n / n!`.
fn poch_over_factorial<T: Real>(a: T, n: usize) -> T {
    let mut p = T::one();
    for j in 1..=n {
        let jf = T::from_usize_lossy(j);
        p *= (a + jf) / jf;
    }
    p
}

/// `Σ_k c_k φ_k(λ)` with the exact monomial coefficients of `P_n`.
pub fn l_coeff<T: Real>(n: usize, lambda: T) -> Result<FormValue<T>> {
    let coeffs = monomial_coefficients(&FamilySpec::legendre(n)?)?;
    let mut acc = ComplexAccumulator::new();
    let mut kernel_err = 0.0f64;
    let mut weighted = 0.0f64;
    for (k, c) in coeffs.to_real::<T>().into_iter().enumerate() {
        if c == T::zero() {
            continue;
        }
        let kv = moment_kernel(k, lambda)?;
        let t = kv.value * c;
        kernel_err = kernel_err.max(kv.est_rel_err);
        weighted += cabs(t).to_f64_lossy() * kv.est_rel_err;
        acc.add(t);
    }
    let mut out = finish(&acc, real(T::one()), n);
    let mag = cabs(out.value).to_f64_lossy();
    out.est_rel_err += if mag > 0.0 { weighted / mag } else { kernel_err };
    Ok(out)
}

/// `2 iⁿ j_n(λ)`.
pub fn l_bessel<T: Real>(n: usize, lambda: T) -> Result<FormValue<T>> {
    let j = spherical_bessel_j(n, lambda)?;
    let eps = T::epsilon().to_f64_lossy();
    Ok(FormValue {
        value: i_pow::<T>(n as i64) * (two::<T>() * j),
        est_rel_err: 4.0 * (n + 2) as f64 * eps,
    })
}

/// `2 Σ (n+k)!/((n−k)! k!) [e^{−iλ}E_k(2iλ) − e^{iλ}]/(−2iλ)^{k+1}`.
pub fn l_hyp<T: Real>(n: usize, lambda: T) -> FormValue<T> {
    let nn = n as f64;
    let r = |k: usize| T::lit((nn + k as f64) * (nn - k as f64 + 1.0)) / T::from_usize_lossy(k);
    let acc = ek_sum(n, T::one(), r, lambda);
    finish(&acc, cis(lambda) * two::<T>(), n)
}

/// `2 Σ (n+k)!/((n−k)! k!) [(−1)^{n+k} e^{−iλ} − e^{iλ}]/(−2iλ)^{k+1}`.
pub fn l_closed<T: Real>(n: usize, lambda: T) -> FormValue<T> {
    let nn = n as f64;
    let r = |k: usize| T::lit((nn + k as f64) * (nn - k as f64 + 1.0)) / T::from_usize_lossy(k);
    let acc = boundary_sum(n, T::one(), r, T::one(), r, lambda);
    finish(&acc, real(two::<T>()), n)
}

/// Jacobi transform as a partial-exponential sum.
pub fn j_ek<T: Real>(n: usize, alpha: T, beta: T, lambda: T) -> FormValue<T> {
    let nf = T::from_usize_lossy(n);
    let c0 = poch_over_factorial(alpha, n);
    let r = |k: usize| {
        let kf = T::from_usize_lossy(k);
        (nf + alpha + beta + kf) * (nf - kf + T::one()) / (alpha + kf)
    };
    let acc = ek_sum(n, c0, r, lambda);
    finish(&acc, cis(lambda) * two::<T>(), n)
}

/// Jacobi transform as a boundary sum with `(α+k+1)_{n−k}` and
/// `(β+k+1)_{n−k}` weights.
pub fn j_boundary<T: Real>(n: usize, alpha: T, beta: T, lambda: T) -> FormValue<T> {
    let nf = T::from_usize_lossy(n);
    let ratio = |p: T| {
        move |k: usize| {
            let kf = T::from_usize_lossy(k);
            (nf + alpha + beta + kf) * (nf - kf + T::one()) / (p + kf)
        }
    };
    let acc = boundary_sum(
        n,
        poch_over_factorial(alpha, n),
        ratio(alpha),
        poch_over_factorial(beta, n),
        ratio(beta),
        lambda,
    );
    finish(&acc, real(two::<T>()), n)
}

/// `A_n^{(a,b)}(t) = (a+1)_n/n! · ₃F₁(n+a+b+1, −n, 1; a+1; 1/t)` with the
/// magnitude of its terms.
fn a_poly<T: Real>(n: usize, a: T, b: T, t: Complex<T>) -> Result<(Complex<T>, T)> {
    let nf = T::from_usize_lossy(n);
    let num = [nf + a + b + T::one(), -nf, T::one()];
    let den = [a + T::one()];
    let (v, mag) = terminating_pfq_sum(&num, &den, t.inv(), n)?;
    let pre = poch_over_factorial(a, n);
    Ok((v * pre, mag * pre.abs()))
}

fn pair_value<T: Real>(
    n: usize,
    minus: (Complex<T>, T),
    plus: (Complex<T>, T),
    lambda: T,
    pre: Complex<T>,
) -> FormValue<T> {
    let e = cis(lambda);
    let s: T = sign_pow(n + 1);
    let left = e.conj() * minus.0 * s;
    let right = e * plus.0;
    let value = (left + right) * pre;
    let mag = (minus.1 + plus.1) * cabs(pre);
    let eps = T::epsilon().to_f64_lossy();
    let denom = cabs(value).to_f64_lossy();
    let cancel = if denom > 0.0 {
        mag.to_f64_lossy() / denom
    } else {
        f64::INFINITY
    };
    FormValue {
        value,
        est_rel_err: (n + 2) as f64 * eps * cancel.max(1.0),
    }
}

/// `(1/iλ)[(−1)^{n+1} e^{−iλ} A_n^{(β,α)}(−2iλ) + e^{iλ} A_n^{(α,β)}(2iλ)]`.
pub fn j_3f1<T: Real>(n: usize, alpha: T, beta: T, lambda: T) -> Result<FormValue<T>> {
    let z = Complex::new(T::zero(), two::<T>() * lambda);
    let minus = a_poly(n, beta, alpha, -z)?;
    let plus = a_poly(n, alpha, beta, z)?;
    let pre = Complex::new(T::zero(), lambda).inv();
    Ok(pair_value(n, minus, plus, lambda, pre))
}

/// Gegenbauer coefficient ratio `(n+2ν+k−1)(n−k+1)/(ν+k−1/2)` shared by the
/// partial-exponential and the boundary form.
fn gegenbauer_ratio<T: Real>(n: usize, nu: T) -> impl Fn(usize) -> T {
    let nf = T::from_usize_lossy(n);
    move |k: usize| {
        let kf = T::from_usize_lossy(k);
        (nf + two::<T>() * nu + kf - T::one()) * (nf - kf + T::one()) / (nu + kf - T::lit(0.5))
    }
}

/// `(2ν)_n / n!`.
fn gegenbauer_c0<T: Real>(n: usize, nu: T) -> T {
    poch_over_factorial(two::<T>() * nu - T::one(), n)
}

/// Gegenbauer transform as a partial-exponential sum with
/// `2^{2k}(n+2ν)_k(ν)_k/(2ν)_{2k}` weights.
pub fn g_ek<T: Real>(n: usize, nu: T, lambda: T) -> FormValue<T> {
    let acc = ek_sum(n, gegenbauer_c0(n, nu), gegenbauer_ratio(n, nu), lambda);
    finish(&acc, cis(lambda) * two::<T>(), n)
}

/// Gegenbauer boundary sum carrying `(2ν+2k)_{2n−2k}/(ν+k)_{n−k}`.
pub fn g_closed<T: Real>(n: usize, nu: T, lambda: T) -> FormValue<T> {
    let c0 = gegenbauer_c0(n, nu);
    let acc = boundary_sum(n, c0, gegenbauer_ratio(n, nu), c0, gegenbauer_ratio(n, nu), lambda);
    finish(&acc, real(two::<T>()), n)
}

/// `(2ν)_n/(iλ n!) [(−1)^{n+1} e^{−iλ} ₃F₁(…; −1/2iλ) + e^{iλ} ₃F₁(…; 1/2iλ)]`
/// with parameters `(n+2ν, −n, 1; ν+1/2)`.
pub fn g_3f1<T: Real>(n: usize, nu: T, lambda: T) -> Result<FormValue<T>> {
    let nf = T::from_usize_lossy(n);
    let num = [nf + two::<T>() * nu, -nf, T::one()];
    let den = [nu + T::lit(0.5)];
    let zinv = Complex::new(T::zero(), two::<T>() * lambda).inv();
    let minus = terminating_pfq_sum(&num, &den, -zinv, n)?;
    let plus = terminating_pfq_sum(&num, &den, zinv, n)?;
    let pre = Complex::new(T::zero(), lambda).inv() * gegenbauer_c0(n, nu);
    Ok(pair_value(n, minus, plus, lambda, pre))
}

fn u_ratio<T: Real>(n: usize) -> impl Fn(usize) -> T {
    let nn = n as f64;
    move |k: usize| {
        let k = k as f64;
        T::lit(2.0 * (nn + k + 1.0) * (nn - k + 1.0)) / T::lit(2.0 * k + 1.0)
    }
}

/// `e^{iλ} Σ 2^{2k+1} k! C(n+k+1, n−k) (e^{−2iλ}E_k(2iλ) − 1)/(−2iλ)^{k+1}`.
pub fn u_ek<T: Real>(n: usize, lambda: T) -> FormValue<T> {
    let acc = ek_sum(n, T::from_usize_lossy(2 * (n + 1)), u_ratio(n), lambda);
    finish(&acc, cis(lambda), n)
}

/// `Σ 2^{2k+1}(n+k+1)! k!/((2k+1)!(n−k)!) [(−1)^{n−k}e^{−iλ} − e^{iλ}]/(−2iλ)^{k+1}`.
pub fn u_closed<T: Real>(n: usize, lambda: T) -> FormValue<T> {
    let c0 = T::from_usize_lossy(2 * (n + 1));
    let acc = boundary_sum(n, c0, u_ratio(n), c0, u_ratio(n), lambda);
    finish(&acc, real(T::one()), n)
}

/// `Σ (−1)^{k+1} n 2^k (n+k)! k!/((n−k)!(2k)!(n+k)) [(−1)^{n−k}e^{−iλ} − e^{iλ}]/(iλ)^{k+1}`
/// for `n ≥ 1`; `T_0 = 1` gives `2 sin λ/λ`.
pub fn t_closed<T: Real>(n: usize, lambda: T) -> Result<FormValue<T>> {
    if n == 0 {
        let kv = moment_kernel(0, lambda)?;
        return Ok(FormValue {
            value: kv.value,
            est_rel_err: kv.est_rel_err,
        });
    }
    // (−1)^{k+1}/(iλ)^{k+1} = 2^{k+1}/(−2iλ)^{k+1}, so the boundary weights
    // are 2^{k+1} t_k with t_0 = 1.
    let nn = n as f64;
    let r = |k: usize| {
        let k = k as f64;
        T::lit(2.0 * (nn + k - 1.0) * (nn - k + 1.0)) / T::lit(2.0 * k - 1.0)
    };
    let acc = boundary_sum(n, two::<T>(), r, two::<T>(), r, lambda);
    Ok(finish(&acc, real(T::one()), n))
}
