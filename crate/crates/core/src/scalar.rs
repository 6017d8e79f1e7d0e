//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! The closed forms are written once against [`Real`] and instantiated with
//! `f32`, `f64` or the double-double type [`crate::Dd`]. The double-double
//! instance is what the dispatcher and the CLI use, because several of the
//! transform sums lose up to fifteen digits to cancellation near the
//! small-λ switch.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumAssignOps, ToPrimitive, Zero};

/// Real scalar type usable by the transform kernels.
pub trait Real:
    Copy
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + NumAssignOps
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
{
    /// Short name used in diagnostics.
    const NAME: &'static str;

    fn pi() -> Self;
    /// Unit roundoff of the type.
    fn epsilon() -> Self;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sin_cos(self) -> (Self, Self) {
        (self.sin(), self.cos())
    }
    fn is_finite(self) -> bool;

    /// Rounds an exact rational to the nearest representable value.
    fn from_rational(r: &BigRational) -> Self;

    /// Exact rational value (`None` for non-finite values).
    fn to_rational(self) -> Option<BigRational>;

    /// Literal constructor; every `f64` is representable in every
    /// implementation up to the target's own rounding.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must convert")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize must convert")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_real_prim {
    ($t:ty, $name:expr) => {
        impl Real for $t {
            const NAME: &'static str = $name;
            #[inline]
            fn pi() -> Self {
                <$t as num_traits::FloatConst>::PI()
            }
            #[inline]
            fn epsilon() -> Self {
                <$t>::EPSILON
            }
            #[inline]
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
            #[inline]
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }
            #[inline]
            fn sin(self) -> Self {
                <$t>::sin(self)
            }
            #[inline]
            fn cos(self) -> Self {
                <$t>::cos(self)
            }
            #[inline]
            fn sin_cos(self) -> (Self, Self) {
                <$t>::sin_cos(self)
            }
            #[inline]
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
            fn from_rational(r: &BigRational) -> Self {
                rational_to_f64(r) as $t
            }
            fn to_rational(self) -> Option<BigRational> {
                f64_to_rational(self as f64)
            }
        }
    };
}

impl_real_prim!(f32, "f32");
impl_real_prim!(f64, "f64");

/// Nearest `f64` to an exact rational, saturating to ±∞ / 0 outside range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 gives up on extreme exponents; fall back to a
        // scaled division of the leading bits.
        let num = r.numer();
        let den = r.denom();
        let shift = num.bits() as i64 - den.bits() as i64;
        let scaled = if shift > 0 {
            BigRational::new(num.clone(), den.clone() << shift as usize)
        } else {
            BigRational::new(num.clone() << (-shift) as usize, den.clone())
        };
        let m = scaled.to_f64().unwrap_or(0.0);
        m * 2f64.powi(shift.clamp(-2000, 2000) as i32)
    })
}

/// Exact rational value of a finite `f64`.
pub fn f64_to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Modulus of a complex number without intermediate overflow.
pub fn cabs<T: Real>(z: Complex<T>) -> T {
    let a = z.re.abs();
    let b = z.im.abs();
    let (big, small) = if a > b { (a, b) } else { (b, a) };
    if big == T::zero() {
        return T::zero();
    }
    let q = small / big;
    big * (T::one() + q * q).sqrt()
}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

/// `i^n` for a possibly negative integer exponent.
pub fn i_pow<T: Real>(n: i64) -> Complex<T> {
    match n.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// `(-1)^n` as a scalar.
#[inline]
pub fn sign_pow<T: Real>(n: usize) -> T {
    if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

/// Lossy conversion of a complex value to `f64` components.
pub fn complex_to_f64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())
}

/// Integer converted to an exact rational.
pub fn int_rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
