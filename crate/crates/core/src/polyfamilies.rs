//! The five polynomial families: validation, three-term-recurrence
//! evaluation, exact monomial coefficients, Jacobi endpoint values and the
//! reductions of Gegenbauer and Chebyshev polynomials to Jacobi ones.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::config::check_degree;
use crate::error::{param, Result};
use crate::exact::{binomial_int, binomial_rational, binomial_signed, linear_power, poly_mul, rational_param};
use crate::numerics::shifted_factorial_exact;
use crate::scalar::{int_rational, Real};

/// Polynomial family with its real parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Legendre,
    Jacobi { alpha: f64, beta: f64 },
    Gegenbauer { nu: f64 },
    ChebyshevT,
    ChebyshevU,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Legendre => "legendre",
            Family::Jacobi { .. } => "jacobi",
            Family::Gegenbauer { .. } => "gegenbauer",
            Family::ChebyshevT => "chebyshev-t",
            Family::ChebyshevU => "chebyshev-u",
        }
    }
}

/// A family together with a degree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    /// Validated constructor.
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let spec = FamilySpec { family, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn legendre(n: usize) -> Result<Self> {
        Self::new(Family::Legendre, n)
    }

    pub fn jacobi(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Family::Jacobi { alpha, beta }, n)
    }

    pub fn gegenbauer(n: usize, nu: f64) -> Result<Self> {
        Self::new(Family::Gegenbauer { nu }, n)
    }

    pub fn chebyshev_t(n: usize) -> Result<Self> {
        Self::new(Family::ChebyshevT, n)
    }

    pub fn chebyshev_u(n: usize) -> Result<Self> {
        Self::new(Family::ChebyshevU, n)
    }

    pub fn validate(&self) -> Result<()> {
        check_degree(self.n)?;
        match self.family {
            Family::Jacobi { alpha, beta } => {
                if !(alpha.is_finite() && beta.is_finite()) {
                    return Err(param("Jacobi parameters must be finite"));
                }
                if alpha <= -1.0 || beta <= -1.0 {
                    return Err(param(format!(
                        "Jacobi parameters must exceed -1 (got α={alpha}, β={beta})"
                    )));
                }
            }
            Family::Gegenbauer { nu } if (!nu.is_finite() || nu <= -0.5 || nu == 0.0) => {
                return Err(param(format!(
                    "Gegenbauer parameter must satisfy ν > -1/2, ν ≠ 0 (got {nu})"
                )));
            }
            _ => {}
        }
        Ok(())
    }

    /// Human-readable parameter list, e.g. `alpha=1;beta=0`.
    pub fn params_label(&self) -> String {
        match self.family {
            Family::Jacobi { alpha, beta } => format!("alpha={alpha};beta={beta}"),
            Family::Gegenbauer { nu } => format!("nu={nu}"),
            _ => String::new(),
        }
    }

    /// Rational readings of the family parameters (empty for parameter-free
    /// families) and whether all of them were recognized exactly.
    pub fn exact_params(&self) -> (Vec<BigRational>, bool) {
        let read = |x: f64| rational_param(x).expect("validated parameter is finite");
        match self.family {
            Family::Jacobi { alpha, beta } => {
                let (a, b) = (read(alpha), read(beta));
                let ok = a.recognized && b.recognized;
                (vec![a.value, b.value], ok)
            }
            Family::Gegenbauer { nu } => {
                let v = read(nu);
                let ok = v.recognized;
                (vec![v.value], ok)
            }
            _ => (Vec::new(), true),
        }
    }

    /// `true` unless a parameter could only be represented by its binary
    /// floating-point value.
    pub fn has_exact_params(&self) -> bool {
        self.exact_params().1
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params_label();
        if p.is_empty() {
            write!(f, "{} n={}", self.family.name(), self.n)
        } else {
            write!(f, "{} n={} {}", self.family.name(), self.n, p)
        }
    }
}

/// Exact monomial coefficients `c_0..c_n` (coefficient of `x^k` is `c_k`).
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCoeffVector {
    coeffs: Vec<BigRational>,
    exact: bool,
}

impl RationalCoeffVector {
    pub fn new(coeffs: Vec<BigRational>, exact: bool) -> Self {
        RationalCoeffVector { coeffs, exact }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `false` when some parameter was not recognized as a small rational.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn to_real<T: Real>(&self) -> Vec<T> {
        self.coeffs.iter().map(T::from_rational).collect()
    }

    /// Horner evaluation in `T`.
    pub fn horner<T: Real>(&self, x: T) -> T {
        self.to_real::<T>().iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    /// `∫_{-1}^{1} x^m P(x) dx`, exactly.
    pub fn moment(&self, m: usize) -> BigRational {
        let mut s = BigRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if (m + k).is_multiple_of(2) && !c.is_zero() {
                s += c * BigRational::new(BigInt::from(2), BigInt::from(m + k + 1));
            }
        }
        s
    }

    /// `Σ |c_k|`, an upper bound for `max_{[-1,1]} |P|`.
    pub fn abs_sum(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, c| acc + c.abs())
    }
}

fn real_params<T: Real>(spec: &FamilySpec) -> Vec<T> {
    spec.exact_params().0.iter().map(T::from_rational).collect()
}

/// `P(x)` by the family's three-term recurrence.
pub fn eval<T: Real>(spec: &FamilySpec, x: T) -> Result<T> {
    spec.validate()?;
    let n = spec.n;
    let one = T::one();
    let two = T::lit(2.0);
    Ok(match spec.family {
        Family::Legendre => three_term(n, one, x, |k, p1, p0| {
            let k = T::from_usize_lossy(k);
            ((two * k + one) * x * p1 - k * p0) / (k + one)
        }),
        Family::ChebyshevT => three_term(n, one, x, |_, p1, p0| two * x * p1 - p0),
        Family::ChebyshevU => three_term(n, one, two * x, |_, p1, p0| two * x * p1 - p0),
        Family::Gegenbauer { .. } => {
            let nu = real_params::<T>(spec)[0];
            three_term(n, one, two * nu * x, |k, p1, p0| {
                let k = T::from_usize_lossy(k);
                (two * (k + nu) * x * p1 - (k + two * nu - one) * p0) / (k + one)
            })
        }
        Family::Jacobi { .. } => {
            let p = real_params::<T>(spec);
            jacobi_recurrence(n, p[0], p[1], x)
        }
    })
}

/// Runs `P_{k+1} = step(k, P_k, P_{k-1})` from `P_0`, `P_1`.
fn three_term<T: Real>(n: usize, p0: T, p1: T, step: impl Fn(usize, T, T) -> T) -> T {
    if n == 0 {
        return p0;
    }
    let (mut prev, mut cur) = (p0, p1);
    for k in 1..n {
        let next = step(k, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn jacobi_recurrence<T: Real>(n: usize, a: T, b: T, x: T) -> T {
    let one = T::one();
    let two = T::lit(2.0);
    let p0 = one;
    if n == 0 {
        return p0;
    }
    let p1 = (a + one) + (a + b + two) * (x - one) / two;
    three_term(n, p0, p1, |k, pk, pkm1| {
        // recurrence for P_{m} with m = k + 1
        let m = T::from_usize_lossy(k + 1);
        let s = two * m + a + b;
        let c1 = two * m * (m + a + b) * (s - two);
        let c2 = (s - one) * (s * (s - two) * x + a * a - b * b);
        let c3 = two * (m + a - one) * (m + b - one) * s;
        (c2 * pk - c3 * pkm1) / c1
    })
}

/// Exact monomial coefficients of the polynomial.
pub fn monomial_coefficients(spec: &FamilySpec) -> Result<RationalCoeffVector> {
    spec.validate()?;
    let (params, exact) = spec.exact_params();
    let n = spec.n;
    let coeffs = match spec.family {
        Family::Legendre => legendre_coefficients(n),
        Family::Jacobi { .. } => jacobi_coefficients(n, &params[0], &params[1]),
        Family::Gegenbauer { .. } | Family::ChebyshevT | Family::ChebyshevU => {
            let (jspec_params, scale) = reduction_exact(spec, &params);
            let base = jacobi_coefficients(n, &jspec_params.0, &jspec_params.1);
            base.into_iter().map(|c| c * &scale).collect()
        }
    };
    Ok(RationalCoeffVector::new(coeffs, exact))
}

/// `P_n(x) = 2^n Σ_k C(n,k) C((n+k-1)/2, n) x^k`.
fn legendre_coefficients(n: usize) -> Vec<BigRational> {
    let two_n = BigRational::from_integer(BigInt::one() << n);
    (0..=n)
        .map(|k| {
            let upper = BigRational::new(BigInt::from(n as i64 + k as i64 - 1), BigInt::from(2));
            let b = binomial_rational(&upper, n);
            &two_n * BigRational::from_integer(binomial_int(n as u64, k as u64)) * b
        })
        .collect()
}

/// `P_n^{(α,β)}(x) = 2^{-n} Σ_k C(α+n,k) C(β+n,n-k) (x-1)^{n-k} (x+1)^k`.
fn jacobi_coefficients(n: usize, a: &BigRational, b: &BigRational) -> Vec<BigRational> {
    let nn = int_rational(n as i64);
    let an = a + &nn;
    let bn = b + &nn;
    let mut out = vec![BigRational::zero(); n + 1];
    for k in 0..=n {
        let w = binomial_rational(&an, k) * binomial_rational(&bn, n - k);
        if w.is_zero() {
            continue;
        }
        let p = poly_mul(&linear_power(-1, 1, n - k), &linear_power(1, 1, k));
        for (o, c) in out.iter_mut().zip(p) {
            *o += &w * c;
        }
    }
    let scale = BigRational::new(BigInt::one(), BigInt::one() << n);
    out.into_iter().map(|c| c * &scale).collect()
}

/// Exact Jacobi parameters and scale for the reducible families.
fn reduction_exact(spec: &FamilySpec, params: &[BigRational]) -> ((BigRational, BigRational), BigRational) {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = spec.n;
    match spec.family {
        Family::Legendre => ((BigRational::zero(), BigRational::zero()), BigRational::one()),
        Family::Jacobi { .. } => ((params[0].clone(), params[1].clone()), BigRational::one()),
        Family::Gegenbauer { .. } => {
            let nu = &params[0];
            let ab = nu - &half;
            let two_nu = nu * int_rational(2);
            let scale = shifted_factorial_exact(&two_nu, n) / shifted_factorial_exact(&(nu + &half), n);
            ((ab.clone(), ab), scale)
        }
        Family::ChebyshevU => {
            let scale = shifted_factorial_exact(&int_rational(2), n)
                / shifted_factorial_exact(&BigRational::new(BigInt::from(3), BigInt::from(2)), n);
            ((half.clone(), half), scale)
        }
        Family::ChebyshevT => {
            let mh = -half;
            // T_n = P_n^{(-1/2,-1/2)} / P_n^{(-1/2,-1/2)}(1), P_n(1) = C(n - 1/2, n)
            let at_one = binomial_rational(&(int_rational(n as i64) + &mh), n);
            ((mh.clone(), mh), at_one.recip())
        }
    }
}

/// Jacobi spec and multiplicative scale with `P = scale · P_n^{(α,β)}`.
pub fn reduce_to_jacobi(spec: &FamilySpec) -> Result<(FamilySpec, f64)> {
    let (jspec, scale) = reduce_to_jacobi_exact(spec)?;
    Ok((jspec, crate::scalar::rational_to_f64(&scale)))
}

/// As [`reduce_to_jacobi`] with the scale kept exact.
pub fn reduce_to_jacobi_exact(spec: &FamilySpec) -> Result<(FamilySpec, BigRational)> {
    spec.validate()?;
    let (params, _) = spec.exact_params();
    let ((a, b), scale) = reduction_exact(spec, &params);
    let to_f = |r: &BigRational| crate::scalar::rational_to_f64(r);
    let alpha = match spec.family {
        Family::Jacobi { alpha, .. } => alpha,
        Family::Gegenbauer { nu } => nu - 0.5,
        _ => to_f(&a),
    };
    let beta = match spec.family {
        Family::Jacobi { beta, .. } => beta,
        Family::Gegenbauer { nu } => nu - 0.5,
        _ => to_f(&b),
    };
    Ok((FamilySpec::jacobi(spec.n, alpha, beta)?, scale))
}

/// `(P_n^{(α,β)}(1), P_n^{(α,β)}(-1)) = (C(α+n, n), (-1)^n C(β+n, n))`.
pub fn jacobi_endpoints(n: usize, alpha: f64, beta: f64) -> Result<(f64, f64)> {
    let spec = FamilySpec::jacobi(n, alpha, beta)?;
    let (p, m) = jacobi_endpoints_exact(&spec);
    Ok((crate::scalar::rational_to_f64(&p), crate::scalar::rational_to_f64(&m)))
}

/// Exact endpoint values of a validated Jacobi spec.
pub fn jacobi_endpoints_exact(spec: &FamilySpec) -> (BigRational, BigRational) {
    let (params, _) = spec.exact_params();
    let n = spec.n;
    let nn = int_rational(n as i64);
    let plus = binomial_rational(&(&params[0] + &nn), n);
    let mut minus = binomial_rational(&(&params[1] + &nn), n);
    if n % 2 == 1 {
        minus = -minus;
    }
    (plus, minus)
}

/// Left side of `Σ_{j=0}^{k} (-1)^j C(n,j) C(2n-j, 2n-k) = C(n,k)`.
pub fn alternating_binomial_sum(n: u64, k: u64) -> BigInt {
    let mut s = BigInt::zero();
    for j in 0..=k {
        let t = binomial_int(n, j) * binomial_int(2 * n - j, 2 * n - k);
        if j % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

/// `Σ_{k=0}^{n} C(a,k) C(b,n-k)` with generalized (possibly negative)
/// integer upper indices.
pub fn vandermonde_sum(a: i64, b: i64, n: usize) -> BigInt {
    (0..=n).map(|k| binomial_signed(a, k) * binomial_signed(b, n - k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial_signed;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn all_specs(n: usize) -> Vec<FamilySpec> {
        let mut v = vec![
            FamilySpec::legendre(n).unwrap(),
            FamilySpec::chebyshev_t(n).unwrap(),
            FamilySpec::chebyshev_u(n).unwrap(),
        ];
        for &(a, b) in &[(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (2.0, 3.0), (-0.3, 0.7)] {
            v.push(FamilySpec::jacobi(n, a, b).unwrap());
        }
        for &nu in &[0.5, 1.0, 2.5] {
            v.push(FamilySpec::gegenbauer(n, nu).unwrap());
        }
        v
    }

    #[test]
    fn validation() {
        assert!(FamilySpec::jacobi(2, -1.0, 0.0).is_err());
        assert!(FamilySpec::jacobi(2, 0.0, f64::NAN).is_err());
        assert!(FamilySpec::gegenbauer(2, 0.0).is_err());
        assert!(FamilySpec::gegenbauer(2, -0.5).is_err());
        assert!(FamilySpec::gegenbauer(2, -0.25).is_ok());
        assert!(FamilySpec::legendre(100_000).is_err());
    }

    #[test]
    fn eval_examples() {
        let p0 = FamilySpec::legendre(0).unwrap();
        assert_eq!(eval(&p0, 0.37).unwrap(), 1.0);
        let j = FamilySpec::jacobi(1, 1.0, 0.0).unwrap();
        for &x in &[-1.0, -0.2, 0.5, 1.0] {
            assert!((eval(&j, x).unwrap() - (3.0 * x + 1.0) / 2.0).abs() < 1e-15);
        }
        let t3 = FamilySpec::chebyshev_t(3).unwrap();
        let th = 0.3f64;
        assert!((eval(&t3, th.cos()).unwrap() - (3.0 * th).cos()).abs() < 1e-15);
    }

    #[test]
    fn coefficient_examples() {
        let c = monomial_coefficients(&FamilySpec::legendre(2).unwrap()).unwrap();
        assert_eq!(c.coeffs(), &[r(-1, 2), r(0, 1), r(3, 2)]);
        let c = monomial_coefficients(&FamilySpec::chebyshev_u(1).unwrap()).unwrap();
        assert_eq!(c.coeffs(), &[r(0, 1), r(2, 1)]);
        let c = monomial_coefficients(&FamilySpec::jacobi(1, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(c.coeffs(), &[r(1, 2), r(3, 2)]);
        assert!(c.is_exact());
        let c = monomial_coefficients(&FamilySpec::chebyshev_t(4).unwrap()).unwrap();
        assert_eq!(c.coeffs(), &[r(1, 1), r(0, 1), r(-8, 1), r(0, 1), r(8, 1)]);
        let c = monomial_coefficients(&FamilySpec::gegenbauer(3, std::f64::consts::E).unwrap()).unwrap();
        assert!(!c.is_exact());
    }

    #[test]
    fn recurrence_matches_coefficients_on_chebyshev_grid() {
        let grid: Vec<f64> = (0..64)
            .map(|i| ((2 * i + 1) as f64 * std::f64::consts::PI / 128.0).cos())
            .collect();
        for n in [0usize, 1, 2, 5, 11, 20, 40] {
            for spec in all_specs(n) {
                let c = monomial_coefficients(&spec).unwrap();
                assert_eq!(c.degree(), n);
                assert!(!c.coeffs()[n].is_zero());
                // Horner is run in double-double: the monomial basis is
                // badly conditioned at n = 40.
                for &x in &grid {
                    let rec = eval(&spec, crate::Dd::from(x)).unwrap().to_f64_lossy();
                    let hor = c.horner(crate::Dd::from(x)).to_f64_lossy();
                    let scale = c.abs_sum();
                    let scale = crate::scalar::rational_to_f64(&scale).max(1.0);
                    assert!(
                        (rec - hor).abs() <= 1e-12 * rec.abs().max(1.0),
                        "{spec} x={x}: {rec} vs {hor}"
                    );
                    let rec64 = eval(&spec, x).unwrap();
                    assert!((rec64 - hor).abs() <= 1e-13 * scale, "{spec} x={x}");
                }
            }
        }
    }

    #[test]
    fn jacobi_reflection() {
        for n in 0..15 {
            for &(a, b) in &[(1.0, 0.0), (2.0, 3.0), (-0.3, 0.7)] {
                let p = FamilySpec::jacobi(n, a, b).unwrap();
                let q = FamilySpec::jacobi(n, b, a).unwrap();
                for i in 0..64 {
                    let x = -1.0 + 2.0 * i as f64 / 63.0;
                    let lhs = eval(&p, -x).unwrap();
                    let rhs = if n % 2 == 0 { 1.0 } else { -1.0 } * eval(&q, x).unwrap();
                    assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn endpoint_examples() {
        assert_eq!(jacobi_endpoints(1, 1.0, 0.0).unwrap(), (2.0, -1.0));
        for n in 0..10 {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(jacobi_endpoints(n, 0.0, 0.0).unwrap(), (1.0, s));
        }
        assert_eq!(jacobi_endpoints(0, 2.2, -0.4).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn reductions() {
        let (j, s) = reduce_to_jacobi(&FamilySpec::gegenbauer(4, 1.0).unwrap()).unwrap();
        assert_eq!(j.family, Family::Jacobi { alpha: 0.5, beta: 0.5 });
        // (2)_4 / (3/2)_4 = 120 / (1.5·2.5·3.5·4.5)
        assert!((s - 120.0 / (1.5 * 2.5 * 3.5 * 4.5)).abs() < 1e-15);
        let (j, s) = reduce_to_jacobi(&FamilySpec::gegenbauer(6, 0.5).unwrap()).unwrap();
        assert_eq!(j.family, Family::Jacobi { alpha: 0.0, beta: 0.0 });
        assert_eq!(s, 1.0);
        let (j, s) = reduce_to_jacobi(&FamilySpec::chebyshev_u(1).unwrap()).unwrap();
        assert!((s * eval(&j, 1.0).unwrap() - 2.0).abs() < 1e-15);
        let (j, s) = reduce_to_jacobi(&FamilySpec::chebyshev_t(0).unwrap()).unwrap();
        assert_eq!((j.n, s), (0, 1.0));
        for n in 0..25 {
            for spec in all_specs(n) {
                let (j, s) = reduce_to_jacobi(&spec).unwrap();
                for i in 0..64 {
                    let x = -1.0 + 2.0 * i as f64 / 63.0;
                    let lhs = s * eval(&j, x).unwrap();
                    let rhs = eval(&spec, x).unwrap();
                    assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "{spec}");
                }
            }
        }
    }

    #[test]
    fn binomial_identity_exact() {
        for n in 0..=60u64 {
            for k in 0..=n {
                assert_eq!(alternating_binomial_sum(n, k), binomial_int(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn vandermonde_with_negative_upper_index() {
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                for n in 0..8usize {
                    assert_eq!(vandermonde_sum(a, b, n), binomial_signed(a + b, n));
                }
            }
        }
    }
}
