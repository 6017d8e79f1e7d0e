//! Cancellation-aware building blocks: partial exponential sums, the
//! monomial moment kernels, shifted factorials and compensated summation.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::config::check_degree;
use crate::error::{Error, Result};
use crate::scalar::{cabs, cis, Real};

/// Neumaier (improved Kahan–Babuška) accumulator for one real component.
#[derive(Clone, Copy, Debug)]
pub struct NeumaierSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for NeumaierSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> NeumaierSum<T> {
    pub fn new() -> Self {
        NeumaierSum {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

/// Compensated accumulator for complex terms, also tracking `Σ|term|` so
/// callers can report the cancellation ratio of the sum.
#[derive(Clone, Copy, Debug)]
pub struct ComplexAccumulator<T> {
    re: NeumaierSum<T>,
    im: NeumaierSum<T>,
    magnitude: T,
}

impl<T: Real> Default for ComplexAccumulator<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> ComplexAccumulator<T> {
    pub fn new() -> Self {
        ComplexAccumulator {
            re: NeumaierSum::new(),
            im: NeumaierSum::new(),
            magnitude: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.magnitude += z.re.abs() + z.im.abs();
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }

    /// `Σ|re|+|im|` of the added terms.
    pub fn magnitude(&self) -> T {
        self.magnitude
    }

    /// Ratio of the summed magnitudes to the magnitude of the result; 1 when
    /// there is no cancellation, unbounded for an exactly cancelling sum.
    pub fn cancellation(&self) -> f64 {
        let v = self.value();
        let denom = (v.re.abs() + v.im.abs()).to_f64_lossy();
        let num = self.magnitude.to_f64_lossy();
        if num == 0.0 {
            1.0
        } else if denom == 0.0 {
            f64::INFINITY
        } else {
            (num / denom).max(1.0)
        }
    }
}

/// Compensated sum of complex terms in iteration order.
pub fn compensated_sum<T: Real, I>(terms: I) -> Complex<T>
where
    I: IntoIterator<Item = Complex<T>>,
{
    let mut acc = ComplexAccumulator::new();
    for z in terms {
        acc.add(z);
    }
    acc.value()
}

/// Partial sum `E_k(z) = Σ_{j=0}^{k} z^j / j!`.
pub fn exp_partial_sum<T: Real>(k: usize, z: Complex<T>) -> Result<Complex<T>> {
    check_degree(k)?;
    let mut acc = ComplexAccumulator::new();
    let mut term = Complex::new(T::one(), T::zero());
    acc.add(term);
    for j in 1..=k {
        term = term * z / T::from_usize_lossy(j);
        acc.add(term);
    }
    Ok(acc.value())
}

/// Scaled partial sum `k!·E_k(w)/w^k = Σ_{j=0}^{k} (k!/j!)·w^{j-k}`,
/// accumulated from `j = k` downwards. Stays O(1) for `|w| ≳ k/2`, where
/// the plain `E_k` and `w^k` would overflow for large `k`.
pub fn exp_partial_sum_scaled<T: Real>(k: usize, w: Complex<T>) -> Complex<T> {
    let mut acc = ComplexAccumulator::new();
    let mut term = Complex::new(T::one(), T::zero());
    acc.add(term);
    for j in (1..=k).rev() {
        term = term * T::from_usize_lossy(j) / w;
        acc.add(term);
    }
    acc.value()
}

/// Shifted factorial `(a)_n = a(a+1)…(a+n-1)` by direct product.
pub fn shifted_factorial<T: Real>(a: T, n: usize) -> T {
    let mut p = T::one();
    let mut x = a;
    for _ in 0..n {
        p *= x;
        x += T::one();
    }
    p
}

/// Exact shifted factorial over the rationals.
pub fn shifted_factorial_exact(a: &BigRational, n: usize) -> BigRational {
    let mut p = BigRational::one();
    let mut x = a.clone();
    for _ in 0..n {
        p *= &x;
        x += BigRational::one();
    }
    p
}

/// Branch used to evaluate a moment kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelBranch {
    ClosedForm,
    Series,
}

/// Moment-kernel value with evaluation diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct KernelValue<T> {
    pub value: Complex<T>,
    pub branch: KernelBranch,
    /// Cancellation ratio times the unit roundoff of `T`.
    pub est_rel_err: f64,
}

/// Switch point between the Taylor series and the closed form for the
/// `k`-th moment: `max(1, k/2)`.
pub fn tau(k: usize) -> f64 {
    (k as f64 / 2.0).max(1.0)
}

/// Hard cap on Taylor terms. Enough for |λ| < 100 at double-double
/// resolution.
pub const SERIES_TERM_CAP: usize = 600;

/// `φ_k(λ) = ∫_{-1}^{1} x^k e^{iλx} dx`.
///
/// Uses the integration-by-parts closed form for `|λ| >= tau(k)` and the
/// Taylor series `Σ_m (iλ)^m/m! · (1+(-1)^{m+k})/(m+k+1)` below it.
pub fn moment_kernel<T: Real>(k: usize, lambda: T) -> Result<KernelValue<T>> {
    check_degree(k)?;
    if lambda.abs().to_f64_lossy() >= tau(k) {
        // ((-1)^k k!/(iλ)^{k+1})[e^{iλ}E_k(-iλ) - e^{-iλ}E_k(iλ)]
        //   = [e^{iλ} ẽ_k(-iλ) - (-1)^k e^{-iλ} ẽ_k(iλ)] / (iλ)
        // with ẽ_k(w) = k! E_k(w) / w^k.
        let il = Complex::new(T::zero(), lambda);
        let e = cis(lambda);
        let a = e * exp_partial_sum_scaled(k, -il);
        let mut b = e.conj() * exp_partial_sum_scaled(k, il);
        if k % 2 == 1 {
            b = -b;
        }
        let mut acc = ComplexAccumulator::new();
        acc.add(a);
        acc.add(-b);
        let value = acc.value() / il;
        return Ok(KernelValue {
            value,
            branch: KernelBranch::ClosedForm,
            est_rel_err: closed_form_error(k, lambda, acc.cancellation()),
        });
    }
    let (value, cancel) = moment_series(k, lambda, true)?;
    Ok(KernelValue {
        value,
        branch: KernelBranch::Series,
        est_rel_err: cancel * T::epsilon().to_f64_lossy(),
    })
}

/// `∫_0^1 x^k e^{iλx} dx`, same branch rule as [`moment_kernel`].
pub fn moment_kernel_unit<T: Real>(k: usize, lambda: T) -> Result<KernelValue<T>> {
    check_degree(k)?;
    if lambda.abs().to_f64_lossy() >= tau(k) {
        // ((-1)^k k!/(iλ)^{k+1})[e^{iλ}E_k(-iλ) - 1]
        let il = Complex::new(T::zero(), lambda);
        let a = cis(lambda) * exp_partial_sum_scaled(k, -il);
        // (-1)^k k!/(iλ)^k, built as a product of j/(iλ) factors
        let mut b = Complex::new(T::one(), T::zero());
        for j in 1..=k {
            b = b * T::from_usize_lossy(j) / (-il);
        }
        let mut acc = ComplexAccumulator::new();
        acc.add(a);
        acc.add(-b);
        let value = acc.value() / il;
        return Ok(KernelValue {
            value,
            branch: KernelBranch::ClosedForm,
            est_rel_err: closed_form_error(k, lambda, acc.cancellation()),
        });
    }
    let (value, cancel) = moment_series(k, lambda, false)?;
    Ok(KernelValue {
        value,
        branch: KernelBranch::Series,
        est_rel_err: cancel * T::epsilon().to_f64_lossy(),
    })
}

fn closed_form_error<T: Real>(k: usize, lambda: T, outer_cancel: f64) -> f64 {
    // the inner scaled sums cancel by at most max_j (k!/j!)|λ|^{j-k}
    let l = lambda.abs().to_f64_lossy();
    let mut t = 1.0f64;
    let mut worst = 1.0f64;
    for j in (1..=k).rev() {
        t *= j as f64 / l;
        worst = worst.max(t);
    }
    outer_cancel * worst * T::epsilon().to_f64_lossy()
}

/// Taylor series of the full (`symmetric = true`) or unit-interval moment.
/// Returns the value and its cancellation ratio.
fn moment_series<T: Real>(k: usize, lambda: T, symmetric: bool) -> Result<(Complex<T>, f64)> {
    let il = Complex::new(T::zero(), lambda);
    let eps = T::epsilon();
    let lam = lambda.abs().to_f64_lossy();
    let mut acc = ComplexAccumulator::new();
    // power = (iλ)^m / m!
    let mut power = Complex::new(T::one(), T::zero());
    for m in 0..SERIES_TERM_CAP {
        if m > 0 {
            power = power * il / T::from_usize_lossy(m);
        }
        let denom = T::from_usize_lossy(m + k + 1);
        let term = if symmetric {
            if (m + k).is_multiple_of(2) {
                power * (T::lit(2.0) / denom)
            } else {
                Complex::zero()
            }
        } else {
            power / denom
        };
        acc.add(term);
        if power.re == T::zero() && power.im == T::zero() {
            return Ok((acc.value(), acc.cancellation()));
        }
        let sum_mag = cabs(acc.value());
        if (m as f64) > lam && m >= 1 && cabs(power) < eps * sum_mag {
            return Ok((acc.value(), acc.cancellation()));
        }
    }
    Err(Error::Internal(format!(
        "moment series for k={k}, λ={lam} did not converge within {SERIES_TERM_CAP} terms"
    )))
}
