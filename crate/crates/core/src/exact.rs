//! Exact rational helpers: parameter recognition, generalized binomials and
//! dense polynomial products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::f64_to_rational;

/// Largest denominator tried when recognizing a decimal parameter.
pub const MAX_PARAM_DENOMINATOR: i64 = 1_000_000;

/// A real parameter together with the rational used for exact work.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactParam {
    pub value: BigRational,
    /// `true` when `value` is a small-denominator rational that rounds to
    /// the given `f64`; `false` when the binary value of the `f64` itself
    /// had to be used.
    pub recognized: bool,
}

/// Rational reading of an `f64` parameter.
///
/// Continued-fraction convergents are tried up to denominator
/// [`MAX_PARAM_DENOMINATOR`]; the first one that rounds back to `x` wins,
/// so `0.3` becomes `3/10` and `-0.5` becomes `-1/2`. Otherwise the exact
/// binary value is returned with `recognized = false`.
pub fn rational_param(x: f64) -> Option<ExactParam> {
    if !x.is_finite() {
        return None;
    }
    if x.fract() == 0.0 {
        return Some(ExactParam {
            value: f64_to_rational(x)?,
            recognized: true,
        });
    }
    let exact = f64_to_rational(x)?;
    // convergents of the exact binary value
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rem = exact.clone();
    for _ in 0..64 {
        let a = rem.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > BigInt::from(MAX_PARAM_DENOMINATOR) {
            break;
        }
        let cand = BigRational::new(h2.clone(), k2.clone());
        if cand.to_f64() == Some(x) {
            return Some(ExactParam {
                value: cand,
                recognized: true,
            });
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = &rem - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rem = frac.recip();
    }
    Some(ExactParam {
        value: exact,
        recognized: false,
    })
}

/// Generalized binomial coefficient `C(r, k) = r(r-1)…(r-k+1)/k!`.
pub fn binomial_rational(r: &BigRational, k: usize) -> BigRational {
    let mut num = BigRational::one();
    let mut x = r.clone();
    for j in 1..=k {
        num *= &x;
        num /= BigRational::from_integer(BigInt::from(j));
        x -= BigRational::one();
    }
    num
}

/// Integer binomial `C(n, k)` for `0 <= k <= n`; zero otherwise.
pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Generalized binomial with an integer (possibly negative) upper index.
pub fn binomial_signed(n: i64, k: usize) -> BigInt {
    if n >= 0 {
        return binomial_int(n as u64, k as u64);
    }
    // C(n, k) = (-1)^k C(k - n - 1, k)
    let b = binomial_int((k as i64 - n - 1) as u64, k as u64);
    if k.is_multiple_of(2) {
        b
    } else {
        -b
    }
}

/// Product of two dense polynomials (ascending coefficients).
pub fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(c0 + c1 x)^k` expanded.
pub fn linear_power(c0: i64, c1: i64, k: usize) -> Vec<BigRational> {
    (0..=k)
        .map(|j| {
            let b = binomial_int(k as u64, j as u64);
            let v = b * BigInt::from(c0).pow((k - j) as u32) * BigInt::from(c1).pow(j as u32);
            BigRational::from_integer(v)
        })
        .collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a BigRational>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// `log2 |x|` of a nonzero rational, accurate to a fraction of a bit.
pub fn log2_abs(x: &BigRational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let n = x.numer().abs();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let top = |v: &BigInt, bits: i64| -> f64 {
        let shift = (bits - 60).max(0) as usize;
        (v >> shift).to_f64().unwrap_or(1.0).log2() + shift as f64
    };
    top(&n, nb) - top(d, db)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn recognizes_decimal_parameters() {
        assert_eq!(rational_param(-0.3).unwrap().value, r(-3, 10));
        assert_eq!(rational_param(0.7).unwrap().value, r(7, 10));
        assert_eq!(rational_param(2.5).unwrap().value, r(5, 2));
        assert_eq!(rational_param(-0.5).unwrap().value, r(-1, 2));
        assert_eq!(rational_param(3.0).unwrap().value, r(3, 1));
        let p = rational_param(std::f64::consts::PI).unwrap();
        assert!(!p.recognized);
        assert!(rational_param(f64::NAN).is_none());
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial_rational(&r(1, 2), 2), r(-1, 8));
        assert_eq!(binomial_rational(&r(5, 1), 2), r(10, 1));
        assert_eq!(binomial_signed(-3, 2), BigInt::from(6));
        assert_eq!(binomial_signed(-3, 3), BigInt::from(-10));
        assert_eq!(binomial_int(10, 3), BigInt::from(120));
        assert_eq!(binomial_int(3, 10), BigInt::zero());
    }

    #[test]
    fn linear_power_and_product() {
        // (x - 1)(x + 1) = x^2 - 1
        let p = poly_mul(&linear_power(-1, 1, 1), &linear_power(1, 1, 1));
        assert_eq!(p, vec![r(-1, 1), r(0, 1), r(1, 1)]);
    }

    #[test]
    fn log2_of_rationals() {
        assert!((log2_abs(&r(1, 8)) + 3.0).abs() < 1e-12);
        let big = BigRational::from_integer(BigInt::from(3) << 500);
        assert!((log2_abs(&big) - (500.0 + 3f64.log2())).abs() < 1e-9);
    }
}
