//! Fixed-point arbitrary-precision arithmetic.
//!
//! A value `v` at precision `p` is the integer `round(v · 2^p)`. Only what
//! the operator method and the confluent series need is provided: π, sine
//! and cosine of a rational argument, and the `₁F₁` power series.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::log2_abs;

static PI_CACHE: Mutex<Option<(u32, BigInt)>> = Mutex::new(None);

/// `round(x · 2^prec)`.
pub fn to_fixed(x: &BigRational, prec: u32) -> BigInt {
    let scaled = x * BigRational::from_integer(BigInt::one() << prec as usize);
    scaled.round().to_integer()
}

/// Arithmetic shift right with round-half-up.
pub fn shr_round(x: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (bits as usize - 1);
    (x + half) >> bits as usize
}

/// Nearest `f64` to a fixed-point value.
pub fn fixed_to_f64(x: &BigInt, prec: u32) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits() as i64;
    let drop = (bits - 64).max(0);
    let top = (x >> drop as usize).to_f64().unwrap_or(f64::NAN);
    top * 2f64.powi((drop - prec as i64).clamp(-2000, 2000) as i32)
}

/// `log2 |x|` of a fixed-point value (−∞ for zero).
pub fn fixed_log2(x: &BigInt, prec: u32) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits() as i64;
    let drop = (bits - 60).max(0);
    (x.abs() >> drop as usize).to_f64().unwrap_or(1.0).log2() + (drop - prec as i64) as f64
}

/// `atan(1/x) · 2^prec` by its alternating series.
fn atan_inv(x: u64, prec: u32) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = (BigInt::one() << prec as usize) / BigInt::from(x);
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `π · 2^prec`, cached at the highest precision requested so far.
pub fn pi_fixed(prec: u32) -> BigInt {
    let mut cache = PI_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some((p, v)) = cache.as_ref() {
        if *p >= prec {
            return shr_round(v, p - prec);
        }
    }
    let w = prec + 16;
    // Machin: π = 16 atan(1/5) − 4 atan(1/239)
    let pi = atan_inv(5, w) * 16 - atan_inv(239, w) * 4;
    let out = shr_round(&pi, 16);
    *cache = Some((prec, out.clone()));
    out
}

/// `(sin x, cos x)` at fixed precision `prec`, accurate to a few units in
/// the last place for any rational `x`.
pub fn sin_cos_fixed(x: &BigRational, prec: u32) -> (BigInt, BigInt) {
    let xbits = if x.is_zero() { 0.0 } else { log2_abs(x).max(0.0) };
    let w = prec + 24;
    let extra = xbits.ceil() as u32 + 8;
    let w2 = w + extra;
    let xf = to_fixed(x, w2);
    let half_pi = pi_fixed(w2) >> 1usize;
    let (k, r) = {
        let (q, rem) = xf.div_mod_floor(&half_pi);
        // centre the remainder in [−π/4, π/4]
        if &rem * 2 > half_pi {
            (q + 1, rem - &half_pi)
        } else {
            (q, rem)
        }
    };
    let r = shr_round(&r, extra);
    let one = BigInt::one() << w as usize;
    let r2 = (&r * &r) >> w as usize;
    let mut s = r.clone();
    let mut c = one.clone();
    let mut ts = r;
    let mut tc = one;
    let mut j = 1u64;
    loop {
        ts = -((&ts * &r2) >> w as usize) / BigInt::from((2 * j) * (2 * j + 1));
        tc = -((&tc * &r2) >> w as usize) / BigInt::from((2 * j - 1) * (2 * j));
        if ts.is_zero() && tc.is_zero() {
            break;
        }
        s += &ts;
        c += &tc;
        j += 1;
    }
    let quadrant = k.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0);
    let (s, c) = match quadrant {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    (shr_round(&s, 24), shr_round(&c, 24))
}

/// Complex fixed-point value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub prec: u32,
}

impl FixedComplex {
    pub fn to_f64(&self) -> num_complex::Complex<f64> {
        num_complex::Complex::new(fixed_to_f64(&self.re, self.prec), fixed_to_f64(&self.im, self.prec))
    }

    /// `log2 |z|`, to within half a bit.
    pub fn log2_abs(&self) -> f64 {
        fixed_log2(&self.re, self.prec).max(fixed_log2(&self.im, self.prec))
    }
}

/// Outcome of a fixed-point `₁F₁` series.
#[derive(Clone, Debug)]
pub struct SeriesOutcome {
    pub value: FixedComplex,
    pub terms: usize,
    /// `log2` of the largest term magnitude.
    pub peak_log2: f64,
}

/// `Σ_k (a)_k/(b)_k z^k/k!` in fixed point at precision `prec`.
///
/// Every term is rounded once per step, so the absolute error is about
/// `terms · 2^(peak_log2 − prec)`; callers choose `prec` accordingly.
/// `(n, d)` with `x = n / 2^d`, if the denominator of `x` is a power of two.
fn binary_fraction(x: &BigRational) -> Option<(BigInt, usize)> {
    let den = x.denom();
    let d = den.trailing_zeros().unwrap_or(0);
    if (BigInt::one() << d as usize) == *den {
        Some((x.numer().clone(), d as usize))
    } else {
        None
    }
}

pub fn hyp1f1_series(
    a: &BigRational,
    b: &BigRational,
    z_re: &BigRational,
    z_im: &BigRational,
    prec: u32,
    max_terms: usize,
) -> Result<SeriesOutcome> {
    let w = prec as usize;
    // z = (zr + i zi) / 2^shift when both parts are binary fractions, which
    // keeps the per-term product at single-limb cost; otherwise z is rounded
    // to the working precision
    let (zr, zi, shift) = match (binary_fraction(z_re), binary_fraction(z_im)) {
        (Some((nr, dr)), Some((ni, di))) => {
            let d = dr.max(di);
            (nr << (d - dr), ni << (d - di), d)
        }
        _ => (to_fixed(z_re, prec), to_fixed(z_im, prec), w),
    };
    let (an, ad) = (a.numer().clone(), a.denom().clone());
    let (bn, bd) = (b.numer().clone(), b.denom().clone());
    let mut tr = BigInt::one() << w;
    let mut ti = BigInt::zero();
    let mut sr = tr.clone();
    let mut si = BigInt::zero();
    let zabs = log2_abs(z_re).max(log2_abs(z_im)).exp2() * std::f64::consts::SQRT_2;
    let mut peak = 0.0f64;
    let mut k: u64 = 0;
    loop {
        if k as usize >= max_terms {
            let value = FixedComplex { re: sr, im: si, prec };
            return Err(Error::Evaluation {
                message: format!("1F1 series did not converge within {max_terms} terms"),
                partial: value.to_f64(),
                estimate: fixed_to_f64(&tr.abs().max(ti.abs()), prec),
            });
        }
        let num = &an + &ad * BigInt::from(k);
        let den_b = &bn + &bd * BigInt::from(k);
        if den_b.is_zero() {
            return Err(crate::error::param("1F1 lower parameter is a nonpositive integer"));
        }
        if num.is_zero() {
            break;
        }
        let nr = (&tr * &zr - &ti * &zi) >> shift;
        let ni = (&tr * &zi + &ti * &zr) >> shift;
        let mul = &num * &bd;
        let div = &ad * &den_b * BigInt::from(k + 1);
        tr = (nr * &mul) / &div;
        ti = (ni * &mul) / &div;
        sr += &tr;
        si += &ti;
        k += 1;
        let lt = fixed_log2(&tr, prec).max(fixed_log2(&ti, prec));
        peak = peak.max(lt);
        if tr.is_zero() && ti.is_zero() && k as f64 > zabs {
            break;
        }
    }
    Ok(SeriesOutcome {
        value: FixedComplex { re: sr, im: si, prec },
        terms: k as usize + 1,
        peak_log2: peak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: f64) -> BigRational {
        BigRational::from_float(x).unwrap()
    }

    #[test]
    fn pi_digits() {
        let p = pi_fixed(200);
        assert_eq!(fixed_to_f64(&p, 200), std::f64::consts::PI);
        // cached path at lower precision agrees
        assert_eq!(pi_fixed(60), shr_round(&p, 140));
    }

    #[test]
    fn sin_cos_matches_f64() {
        for &x in &[0.0, 0.3, -1.7, 3.0, 10.0, 100.25, -1234.5, 1.0e6] {
            let (s, c) = sin_cos_fixed(&q(x), 80);
            assert!((fixed_to_f64(&s, 80) - x.sin()).abs() < 1e-15, "sin {x}");
            assert!((fixed_to_f64(&c, 80) - x.cos()).abs() < 1e-15, "cos {x}");
        }
    }

    #[test]
    fn sin_cos_high_precision_identity() {
        let x = BigRational::new(BigInt::from(355), BigInt::from(113));
        let p = 600;
        let (s, c) = sin_cos_fixed(&x, p);
        let one = BigInt::one() << (2 * p) as usize;
        let resid = &s * &s + &c * &c - one;
        assert!(resid.bits() < p as u64 + 8);
        // sin(355/113) is tiny and positive: 355/113 exceeds π by 2.7e-7
        assert!((fixed_to_f64(&s, p) + 2.667e-7).abs() < 1e-9);
    }

    #[test]
    fn series_reproduces_exponential() {
        // 1F1(a; a; z) = e^z
        let a = q(1.5);
        let out = hyp1f1_series(&a, &a, &q(0.0), &q(30.0), 140, 10_000).unwrap();
        let v = out.value.to_f64();
        assert!((v.re - 30f64.cos()).abs() < 1e-14 && (v.im - 30f64.sin()).abs() < 1e-14);
        assert!(out.peak_log2 > 30.0);
    }

    #[test]
    fn series_terminates_for_negative_integer_numerator() {
        // 1F1(-2; 1; z) = 1 - 2z + z^2/2 (Laguerre L_2)
        let out = hyp1f1_series(&q(-2.0), &q(1.0), &q(3.0), &q(0.0), 64, 100).unwrap();
        assert_eq!(out.value.to_f64().re, 1.0 - 6.0 + 4.5);
        assert!(hyp1f1_series(&q(1.0), &q(-3.0), &q(1.0), &q(0.0), 64, 100).is_err());
        let e = hyp1f1_series(&q(1.0), &q(2.0), &q(0.0), &q(40.0), 128, 10).unwrap_err();
        assert!(matches!(e, Error::Evaluation { .. }));
    }
}
