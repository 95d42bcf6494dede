//! Scalar abstraction shared by the double and double-double code paths.

use num_complex::Complex;
use num_traits::Num;
use std::fmt::Debug;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

/// A real scalar the special functions can be evaluated over.
///
/// The truncation parameters travel with the scalar so that each precision
/// picks series lengths matched to its unit roundoff.
pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    /// Shift `lngamma` arguments until `Re z` reaches this value.
    const STIRLING_SHIFT: f64;
    /// Number of Bernoulli terms in the Stirling series.
    const STIRLING_TERMS: usize;
    /// Number of Bernoulli correction terms in Euler-Maclaurin sums.
    const EM_TERMS: usize;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn pi() -> Self;
    fn ln2() -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn atan2(self, x: Self) -> Self;
    fn floor(self) -> Self;

    /// Number of explicit terms for an Euler-Maclaurin sum at height `im`.
    fn em_cutoff(im: f64) -> usize;

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }

    fn from_ratio(num: i128, den: i128) -> Self {
        split_i128::<Self>(num) / split_i128::<Self>(den)
    }

    fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }
}

fn split_i128<R: Real>(n: i128) -> R {
    // exact for |n| < 2^106
    let hi = n as f64;
    let lo = (n - hi as i128) as f64;
    R::from_f64(hi) + R::from_f64(lo)
}

impl Real for f64 {
    const STIRLING_SHIFT: f64 = 15.0;
    const STIRLING_TERMS: usize = 10;
    const EM_TERMS: usize = 12;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn ln2() -> Self {
        std::f64::consts::LN_2
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn floor(self) -> Self {
        f64::floor(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn em_cutoff(im: f64) -> usize {
        20usize.max(im.abs().ceil() as usize + 10)
    }
}

/// Complex exponential over any [`Real`].
pub fn cexp<R: Real>(z: Complex<R>) -> Complex<R> {
    let m = z.re.exp();
    let (s, c) = z.im.sin_cos();
    Complex::new(m * c, m * s)
}

/// Principal complex logarithm.
pub fn cln<R: Real>(z: Complex<R>) -> Complex<R> {
    Complex::new(cabs(z).ln(), z.im.atan2(z.re))
}

pub fn cabs<R: Real>(z: Complex<R>) -> R {
    let a = z.re.abs();
    let b = z.im.abs();
    let (big, small) = if a > b { (a, b) } else { (b, a) };
    if big == R::zero() {
        return R::zero();
    }
    let q = small / big;
    big * (R::one() + q * q).sqrt()
}

pub fn carg<R: Real>(z: Complex<R>) -> R {
    z.im.atan2(z.re)
}

/// `x^s` for a positive real base given as `ln x`.
pub fn pow_from_ln<R: Real>(ln_base: R, s: Complex<R>) -> Complex<R> {
    cexp(s * ln_base)
}

pub fn cfrom<R: Real>(z: Complex<f64>) -> Complex<R> {
    Complex::new(R::from_f64(z.re), R::from_f64(z.im))
}

pub fn cto_f64<R: Real>(z: Complex<R>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn cis_finite<R: Real>(z: Complex<R>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
