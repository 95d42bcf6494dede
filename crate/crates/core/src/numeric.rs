//! Small numerical kernels: bracketed bisection and polynomial extrapolation.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Bisection on `[lo, hi]`, where `f(lo)` and `f(hi)` have opposite signs.
///
/// Stops when the bracket is narrower than `tol` or `f` vanishes exactly, and
/// returns the endpoint with the smaller residual.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::InvalidArgument(format!(
            "bisection bracket [{lo}, {hi}] has no sign change"
        )));
    }
    let mut fhi = fhi;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    Ok(if flo.abs() <= fhi.abs() { lo } else { hi })
}

/// Neville extrapolation of samples `(h_i, f_i)` to `h = 0`.
///
/// Returns the extrapolated value and the difference between the last two
/// diagonal entries as an error indicator.
pub fn extrapolate_to_zero(hs: &[f64], fs: &[Complex64]) -> (Complex64, f64) {
    assert_eq!(hs.len(), fs.len());
    assert!(!hs.is_empty());
    let n = hs.len();
    let mut p = fs.to_vec();
    let mut prev_top = p[n - 1];
    for m in 1..n {
        prev_top = p[n - 1];
        for i in (m..n).rev() {
            let (hi, hj) = (hs[i], hs[i - m]);
            p[i] = (p[i] * hj - p[i - 1] * hi) / (hj - hi);
        }
    }
    let best = p[n - 1];
    (best, (best - prev_top).norm())
}

/// Richardson combination for samples at `h, h/2, h/4` whose error is a
/// power series in `h`: eliminates the linear and quadratic terms.
pub fn richardson_halving(f_h: Complex64, f_h2: Complex64, f_h4: Complex64) -> Complex64 {
    (f_h4 * 8.0 - f_h2 * 6.0 + f_h) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisection_rejects_bad_bracket() {
        assert!(bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn richardson_is_exact_on_quadratics() {
        let f = |h: f64| Complex64::new(3.0 + 2.0 * h - 5.0 * h * h, h);
        let v = richardson_halving(f(0.1), f(0.05), f(0.025));
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-13);
        let hs = [0.1, 0.05, 0.025];
        let (w, _) = extrapolate_to_zero(&hs, &hs.map(f));
        assert!((w - v).norm() < 1e-13);
    }

    #[test]
    fn neville_extrapolates_exp() {
        let hs = [0.1, 0.05, 0.025, 0.0125];
        let fs = hs.map(|h: f64| Complex64::new(h.exp_m1() / h, 0.0));
        let (v, err) = extrapolate_to_zero(&hs, &fs);
        assert!((v.re - 1.0).abs() < 1e-7, "{v}");
        assert!(err < 1e-5);
    }
}
