//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! with `|lo| <= ulp(hi)/2`, giving about 106 bits of significand.
//!
//! Only the operations the transform kernels need are provided: the four
//! field operations, `sqrt`, and `sin`/`cos` with a three-part reduction
//! by π/2 (accurate for |x| up to about 2^40).

use std::cmp::Ordering;
use std::fmt;
use std::num::ParseFloatError;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

use crate::scalar::{f64_to_rational, rational_to_f64, Real};

/// Double-double real number.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if !p.is_finite() {
        return (p, 0.0);
    }
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

const PIO2: [f64; 3] = [
    std::f64::consts::FRAC_PI_2,
    6.123233995736766e-17,
    -1.4973849048591698e-33,
];

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };
    /// 2^-104.
    pub const EPSILON: Dd = Dd {
        hi: 4.930380657631324e-32,
        lo: 0.0,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn mul_f64s(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn trunc(self) -> Self {
        let th = self.hi.trunc();
        if th != self.hi {
            return Dd { hi: th, lo: 0.0 };
        }
        let mut tl = self.lo.trunc();
        if self.hi > 0.0 && self.lo < 0.0 && tl != self.lo {
            tl -= 1.0;
        } else if self.hi < 0.0 && self.lo > 0.0 && tl != self.lo {
            tl += 1.0;
        }
        Dd::new(th, tl)
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::ZERO
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let diff = self - Dd::mul_f64s(ax, ax);
        Dd::new(ax, diff.hi * x * 0.5)
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    /// Taylor series of sin and cos on |r| <= π/4.
    fn sin_cos_reduced(r: Dd) -> (Dd, Dd) {
        let r2 = r * r;
        let eps = 1e-34;
        let mut s = r;
        let mut term = r;
        let mut m = 1.0;
        loop {
            term = -(term * r2).div_f64((2.0 * m) * (2.0 * m + 1.0));
            s += term;
            m += 1.0;
            if term.hi.abs() < eps * s.hi.abs().max(1e-300) {
                break;
            }
        }
        let mut c = Dd::ONE;
        let mut term = Dd::ONE;
        let mut m = 1.0;
        loop {
            term = -(term * r2).div_f64((2.0 * m - 1.0) * (2.0 * m));
            c += term;
            m += 1.0;
            if term.hi.abs() < eps {
                break;
            }
        }
        (s, c)
    }

    fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - Dd::mul_f64s(q1, b);
        let q2 = r.hi / b;
        let r = r - Dd::mul_f64s(q2, b);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        if !self.hi.is_finite() {
            return (Dd::from_f64(f64::NAN), Dd::from_f64(f64::NAN));
        }
        let k = (self.hi / PIO2[0]).round();
        let mut r = self;
        for &p in &PIO2 {
            r -= Dd::mul_f64s(k, p);
        }
        let (s, c) = Self::sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == 0.0 {
            write!(f, "{:e}", self.hi)
        } else {
            write!(f, "{:e}{:+e}", self.hi, self.lo)
        }
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for Dd {
            #[inline]
            fn $m(&mut self, rhs: Dd) {
                *self = *self $op rhs;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl Zero for Dd {
    fn zero() -> Self {
        Dd::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::ONE
    }
}

impl Num for Dd {
    type FromStrRadixErr = ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            // num-traits only guarantees radix 10 for floats as well
            "radix".parse::<f64>()?;
        }
        s.parse::<f64>().map(Dd::from_f64)
    }
}

impl ToPrimitive for Dd {
    fn to_i64(&self) -> Option<i64> {
        (self.hi + self.lo).to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        (self.hi + self.lo).to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for Dd {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        Some(Dd::new(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(Dd::new(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Dd::from_f64(x))
    }
}

impl Real for Dd {
    const NAME: &'static str = "dd";

    fn pi() -> Self {
        Dd::PI
    }
    fn epsilon() -> Self {
        Dd::EPSILON
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn sin_cos(self) -> (Self, Self) {
        Dd::sin_cos(self)
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
    fn from_rational(r: &BigRational) -> Self {
        let hi = rational_to_f64(r);
        if !hi.is_finite() || hi == 0.0 {
            return Dd::from_f64(hi);
        }
        let rest = r - f64_to_rational(hi).expect("finite");
        Dd::new(hi, rational_to_f64(&rest))
    }

    fn to_rational(self) -> Option<BigRational> {
        Some(f64_to_rational(self.hi)? + f64_to_rational(self.lo)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn third_is_accurate_to_double_double() {
        let third = Dd::ONE / Dd::from_f64(3.0);
        let back = third * Dd::from_f64(3.0) - Dd::ONE;
        assert!(back.abs().hi() < 1e-31);
        let exact = Dd::from_rational(&rat(1, 3));
        assert!((third - exact).abs().hi() < 1e-32);
    }

    #[test]
    fn sqrt_two_squares_back() {
        let r = Dd::from_f64(2.0).sqrt();
        assert!((r * r - Dd::from_f64(2.0)).abs().hi() < 1e-31);
    }

    #[test]
    fn sin_of_pi_recovers_the_dd_residual() {
        // sin(fl(π)) = π - fl(π) to first order.
        let s = Dd::from_f64(std::f64::consts::PI).sin();
        assert!((s.hi() - 1.2246467991473532e-16).abs() < 1e-31);
        // sin(π_dd) is below the double-double resolution.
        assert!(Dd::PI.sin().abs().hi() < 1e-31);
    }

    #[test]
    fn pythagoras_holds_across_reductions() {
        for &x in &[0.1, 1.0, 2.5, -7.3, 100.0, 1234.5678, -3217.0] {
            let (s, c) = Dd::from_f64(x).sin_cos();
            let one = s * s + c * c - Dd::ONE;
            assert!(one.abs().hi() < 1e-30, "x={x}");
            assert!((s.hi() - x.sin()).abs() < 1e-15);
            assert!((c.hi() - x.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn sin_matches_series_identity_at_small_argument() {
        // sin(1e-5) = 1e-5 - 1e-15/6 + 1e-25/120 - ...
        let x = Dd::from_f64(1e-5);
        let expected = x - x * x * x / Dd::from_f64(6.0) + x * x * x * x * x / Dd::from_f64(120.0);
        assert!((x.sin() - expected).abs().hi() < 1e-40);
    }

    #[test]
    fn trunc_and_rem() {
        let x = Dd::new(5.0, -1e-20);
        assert_eq!(x.trunc().hi(), 4.0);
        let r = Dd::from_f64(7.5) % Dd::from_f64(2.0);
        assert_eq!(r.hi(), 1.5);
    }
}
