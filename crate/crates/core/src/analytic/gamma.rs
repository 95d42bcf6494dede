//! Complex log-gamma by upward recursion and the Stirling series.

use super::bernoulli::bernoulli_2k;
use super::real::{cis_finite, cln, Real};
use crate::error::{Error, Result};
use num_complex::Complex;

/// Principal branch of `log Γ(z)`.
///
/// The argument is shifted upward until `Re z >= R::STIRLING_SHIFT`, the
/// Stirling series is summed there, and the shift is undone with principal
/// logarithms. Along vertical lines the result is continuous in `Im z`.
pub fn lngamma<R: Real>(z: Complex<R>) -> Result<Complex<R>> {
    if z.im == R::zero() && z.re <= R::zero() && z.re == z.re.floor() {
        return Err(Error::GammaPole {
            re: z.re.to_f64(),
            im: 0.0,
        });
    }
    let shift = R::from_f64(R::STIRLING_SHIFT);
    let mut w = z;
    let mut acc = Complex::new(R::zero(), R::zero());
    while w.re < shift {
        acc = acc + cln(w);
        w.re += R::one();
    }
    let value = stirling(w) - acc;
    if !cis_finite(value) {
        return Err(Error::NonFinite("lngamma"));
    }
    Ok(value)
}

fn stirling<R: Real>(w: Complex<R>) -> Complex<R> {
    let half = R::from_f64(0.5);
    let ln_2pi_half = half * (R::from_f64(2.0) * R::pi()).ln();
    let lw = cln(w);
    let mut out = (w - half) * lw - w + ln_2pi_half;
    let winv = Complex::new(R::one(), R::zero()) / w;
    let winv2 = winv * winv;
    let mut pow = winv;
    for k in 1..=R::STIRLING_TERMS {
        let b = bernoulli_2k::<R>(k);
        let denom = R::from_i64((2 * k * (2 * k - 1)) as i64);
        out = out + pow * (b / denom);
        pow = pow * winv2;
    }
    out
}

/// Γ(z) itself (may overflow for large arguments).
pub fn gamma<R: Real>(z: Complex<R>) -> Result<Complex<R>> {
    lngamma(z).map(super::real::cexp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::dd::DoubleDouble;
    use crate::analytic::real::cto_f64;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    /// Independent oracle: Lanczos-free shifted Stirling at z + 20 with
    /// 20 downward recursion steps done one logarithm at a time.
    fn shifted_stirling_oracle(z: Complex64) -> Complex64 {
        let w = z + 20.0;
        let mut v = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
        let coeffs = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360360.0,
            1.0 / 156.0,
            -3617.0 / 122400.0,
        ];
        let mut p = 1.0 / w;
        for c in coeffs {
            v += c * p;
            p /= w * w;
        }
        for k in 0..20 {
            v -= (z + k as f64).ln();
        }
        v
    }

    #[test]
    fn special_values() {
        let half = lngamma(Complex64::new(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt().ln()).abs() < 1e-14);
        assert!(half.im.abs() < 1e-14);
        let one = lngamma(Complex64::new(1.0, 0.0)).unwrap();
        assert!(one.norm() < 1e-14);
    }

    #[test]
    fn matches_shifted_stirling_oracle() {
        let z = Complex64::new(1.0, 5.0);
        let v = lngamma(z).unwrap();
        let o = shifted_stirling_oracle(z);
        assert!((v - o).norm() < 1e-10, "{v} vs {o}");
        for &(re, im) in &[(0.25, 77.0), (0.5, -130.0), (3.0, 0.01), (-2.5, 1.5)] {
            let z = Complex64::new(re, im);
            let d = (lngamma(z).unwrap() - shifted_stirling_oracle(z)).norm();
            assert!(d < 1e-10, "z = {z}: {d:e}");
        }
    }

    #[test]
    fn poles_are_reported() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(lngamma(Complex64::new(n, 0.0)), Err(Error::GammaPole { .. })));
        }
    }

    #[test]
    fn branch_is_continuous_on_vertical_lines() {
        let mut prev = lngamma(Complex64::new(0.5, 0.0)).unwrap().im;
        let mut t = 0.0;
        while t < 300.0 {
            t += 0.05;
            let cur = lngamma(Complex64::new(0.5, t)).unwrap().im;
            assert!((cur - prev).abs() < 0.5, "jump at t = {t}");
            prev = cur;
        }
    }

    #[test]
    fn double_double_agrees_with_double() {
        for &(re, im) in &[(0.5, 14.0), (1.0, 5.0), (0.75, 160.0)] {
            let z = Complex64::new(re, im);
            let d = lngamma(z).unwrap();
            let e = cto_f64(lngamma(Complex::new(DoubleDouble::from(re), DoubleDouble::from(im))).unwrap());
            assert!((d - e).norm() < 1e-12 * d.norm().max(1.0), "{d} vs {e}");
        }
    }

    #[test]
    fn double_double_reaches_beyond_double() {
        // log Γ(1/2) = log √π to ~30 digits
        let v = lngamma(Complex::new(DoubleDouble::from(0.5), DoubleDouble::from(0.0))).unwrap();
        let expect = DoubleDouble::new(0.5723649429247001, 5.132975581353913e-18);
        assert!((v.re - expect).to_f64().abs() < 1e-28);
    }
}
