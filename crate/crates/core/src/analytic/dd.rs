//! Double-double arithmetic (roughly 106-bit significand).
//!
//! Used only as an independent higher-precision route for cross-checking the
//! double-precision pipeline. Algorithms follow the classic error-free
//! transformations (`two_sum`, `two_prod` via fused multiply-add).

use super::real::Real;
use num_traits::{Num, One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

#[derive(Clone, Copy, Debug, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

const PI_DD: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};
const FRAC_PI_2_DD: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::FRAC_PI_2,
    lo: 6.123233995736766e-17,
};
const LN2_DD: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        DoubleDouble {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    fn round(self) -> Self {
        (self + DoubleDouble::from(0.5)).floor()
    }

    /// sin and cos on |r| <= pi/4 by Taylor series.
    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r * r;
        let mut term = r;
        let mut sin = r;
        let mut k = 1.0;
        for _ in 0..14 {
            term = -(term * r2) / DoubleDouble::from((k + 1.0) * (k + 2.0));
            sin += term;
            k += 2.0;
        }
        let mut term = DoubleDouble::one();
        let mut cos = DoubleDouble::one();
        let mut k = 0.0;
        for _ in 0..14 {
            term = -(term * r2) / DoubleDouble::from((k + 1.0) * (k + 2.0));
            cos += term;
            k += 2.0;
        }
        (sin, cos)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        let q = (self / b).trunc();
        self - q * b
    }
}

impl DoubleDouble {
    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            -(-self).floor()
        }
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble { hi: 1.0, lo: 0.0 }
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, _radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        s.parse::<f64>().map(DoubleDouble::from)
    }
}

impl Real for DoubleDouble {
    const STIRLING_SHIFT: f64 = 40.0;
    const STIRLING_TERMS: usize = 20;
    const EM_TERMS: usize = 20;

    fn from_f64(x: f64) -> Self {
        DoubleDouble::from(x)
    }
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    fn pi() -> Self {
        PI_DD
    }
    fn ln2() -> Self {
        LN2_DD
    }

    fn exp(self) -> Self {
        if self.hi > 709.0 {
            return DoubleDouble::from(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return DoubleDouble::zero();
        }
        let k = (self.hi / LN2_DD.hi).round();
        let r = (self - LN2_DD.mul_f64(k)).ldexp(-10);
        // Taylor series of exp(r) - 1 for |r| < 2^-10 * ln2 / 2
        let mut term = r;
        let mut sum = r;
        for n in 2..=12 {
            term = term * r / DoubleDouble::from(n as f64);
            sum += term;
        }
        // (1 + s)^2 - 1 = 2s + s^2, ten squarings
        for _ in 0..10 {
            sum = sum.mul_f64(2.0) + sum * sum;
        }
        (sum + DoubleDouble::one()).ldexp(k as i32)
    }

    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::from(f64::NAN);
        }
        let mut y = DoubleDouble::from(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - DoubleDouble::one();
        }
        y
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                DoubleDouble::zero()
            } else {
                DoubleDouble::from(f64::NAN)
            };
        }
        let x = DoubleDouble::from(self.hi.sqrt());
        // one Newton step in double-double
        (x + self / x).mul_f64(0.5)
    }

    fn sin_cos(self) -> (Self, Self) {
        let k = (self / FRAC_PI_2_DD).round();
        let r = self - k * FRAC_PI_2_DD;
        let (s, c) = DoubleDouble::sin_cos_reduced(r);
        match (k.hi as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn atan2(self, x: Self) -> Self {
        let y = self;
        if x.hi == 0.0 && y.hi == 0.0 {
            return DoubleDouble::zero();
        }
        let mut z = DoubleDouble::from(y.hi.atan2(x.hi));
        for _ in 0..2 {
            let (s, c) = z.sin_cos();
            z += (y * c - x * s) / (x * c + y * s);
        }
        z
    }

    fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            let (hi, lo) = quick_two_sum(hi, lo);
            DoubleDouble { hi, lo }
        } else {
            DoubleDouble { hi, lo: 0.0 }
        }
    }

    fn em_cutoff(im: f64) -> usize {
        40usize.max((2.0 * im.abs()).ceil() as usize + 30)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: DoubleDouble, hi: f64, lo: f64, tol: f64) {
        let d = (a - DoubleDouble::new(hi, lo)).to_f64();
        assert!(d.abs() < tol, "{a} vs {hi:e}+{lo:e}: diff {d:e}");
    }

    // reference words computed with 40-digit arithmetic
    #[test]
    fn transcendental_functions_reach_double_double_accuracy() {
        let one = DoubleDouble::one();
        close(one.exp(), std::f64::consts::E, 1.4456468917292502e-16, 1e-30);
        close(
            DoubleDouble::from(2.0).ln(),
            std::f64::consts::LN_2,
            2.3190468138462996e-17,
            1e-30,
        );
        let (s, c) = one.sin_cos();
        close(s, 0.8414709848078965, 1.776845092935536e-18, 1e-30);
        close(c, 0.5403023058681398, -4.760954612604417e-17, 1e-30);
        close(
            one.atan2(DoubleDouble::from(3.0)),
            0.3217505543966422,
            7.917392525722143e-18,
            1e-30,
        );
        let (s, _) = DoubleDouble::from(100.0).sin_cos();
        close(s, -0.5063656411097588, -3.050947053792115e-18, 1e-29);
        close(
            DoubleDouble::from(-30.5).exp(),
            5.675685232632723e-14,
            -2.744021414416088e-30,
            1e-43,
        );
    }

    #[test]
    fn division_and_sqrt_invert_multiplication() {
        let a = DoubleDouble::from(1.0) / DoubleDouble::from(3.0);
        close(a * DoubleDouble::from(3.0), 1.0, 0.0, 1e-31);
        let r = DoubleDouble::from(2.0).sqrt();
        close(r * r, 2.0, 0.0, 1e-31);
    }
}
