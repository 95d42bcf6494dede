//! Riemann zeta and periodic Dirichlet series (L(s, χ₋₄) in particular) by
//! Euler-Maclaurin summation over arithmetic progressions.

use super::bernoulli::bernoulli_2k;
use super::real::{cexp, cis_finite, Real};
use crate::error::{Error, Result};
use num_complex::Complex;

/// `(e^x - 1) / x`, accurate near zero.
fn exprel<R: Real>(x: Complex<R>) -> Complex<R> {
    let one = Complex::new(R::one(), R::zero());
    if x.norm_sqr() < R::from_f64(0.25) {
        let mut term = one;
        let mut sum = one;
        for n in 2..40 {
            term = term * x / R::from_i64(n);
            sum = sum + term;
            if term.norm_sqr() < R::from_f64(1e-70) {
                break;
            }
        }
        sum
    } else {
        (cexp(x) - one) / x
    }
}

/// Euler-Maclaurin sum of `Σ_{n≥0} a_r (n q + r)^{-s}` over residues `r = 1..=q`,
/// without the integral term (see [`singular_term`]).
///
/// `coeffs[r - 1]` is the coefficient on the progression `r mod q`.
fn progression_sum<R: Real>(s: Complex<R>, q: usize, coeffs: &[f64]) -> Complex<R> {
    let n_cut = R::em_cutoff(s.im.to_f64());
    let qr = R::from_i64(q as i64);
    let one = R::one();
    let mut total = Complex::new(R::zero(), R::zero());

    // rising factorial coefficients (s)_{2k-1} / (2k)! * B_2k * q^{2k-1}
    let k_max = R::EM_TERMS;
    let mut corr = Vec::with_capacity(k_max);
    {
        let mut rising = s; // (s)_1
        let mut fact = R::from_f64(2.0); // 2!
        let mut qpow = qr;
        for k in 1..=k_max {
            corr.push(rising * (bernoulli_2k::<R>(k) / fact * qpow));
            let a = R::from_i64(2 * k as i64 - 1);
            let b = R::from_i64(2 * k as i64);
            rising = rising * (s + a) * (s + b);
            fact = fact * R::from_i64((2 * k + 1) as i64) * R::from_i64((2 * k + 2) as i64);
            qpow = qpow * qr * qr;
        }
    }

    for (idx, &a) in coeffs.iter().enumerate() {
        let r = idx + 1;
        if a == 0.0 {
            continue;
        }
        let a = R::from_f64(a);
        let mut part = Complex::new(R::zero(), R::zero());
        for n in 0..n_cut {
            let x = R::from_i64((n * q + r) as i64);
            part = part + cexp(-s * x.ln());
        }
        let big_x = R::from_i64((n_cut * q + r) as i64);
        let ln_x = big_x.ln();
        let x_pow = cexp(-s * ln_x); // X^{-s}
        let inv_x2 = one / (big_x * big_x);
        let mut tail = x_pow * R::from_f64(0.5);
        let mut p = x_pow / big_x; // X^{-s-1}
        for c in &corr {
            tail = tail + *c * p;
            p = p * inv_x2;
        }
        total = total + (part + tail) * a;
    }
    total
}

/// The integral term `Σ_r a_r X_r^{1-s} / (q (s-1))`, regular at `s = 1`
/// when the coefficients sum to zero.
fn singular_term<R: Real>(s: Complex<R>, q: usize, coeffs: &[f64]) -> Result<Complex<R>> {
    let n_cut = R::em_cutoff(s.im.to_f64());
    let u = Complex::new(R::one(), R::zero()) - s;
    let qr = R::from_i64(q as i64);
    let sum_a: f64 = coeffs.iter().sum();
    let ln_ref = R::from_i64((n_cut * q + 1) as i64).ln();
    let mut total = Complex::new(R::zero(), R::zero());
    if sum_a != 0.0 {
        if u.re == R::zero() && u.im == R::zero() {
            return Err(Error::Pole {
                function: "zeta".into(),
                re: 1.0,
                im: 0.0,
            });
        }
        total = total + cexp(u * ln_ref) / (-u) * R::from_f64(sum_a);
    }
    for (idx, &a) in coeffs.iter().enumerate() {
        if a == 0.0 || idx == 0 {
            continue;
        }
        let ln_x = R::from_i64((n_cut * q + idx + 1) as i64).ln();
        // (X^u - X_1^u) / (-u)
        let d = ln_x - ln_ref;
        let diff = cexp(u * ln_ref) * exprel(u * d) * d;
        total = total - diff * R::from_f64(a);
    }
    Ok(total / qr)
}

fn periodic_l<R: Real>(s: Complex<R>, q: usize, coeffs: &[f64]) -> Result<Complex<R>> {
    let v = progression_sum(s, q, coeffs) + singular_term(s, q, coeffs)?;
    if !cis_finite(v) {
        return Err(Error::NonFinite("Euler-Maclaurin sum"));
    }
    Ok(v)
}

/// Riemann zeta function, analytically continued; pole error at `s = 1`.
pub fn zeta<R: Real>(s: Complex<R>) -> Result<Complex<R>> {
    periodic_l(s, 1, &[1.0])
}

/// L(s, χ₋₄) for the non-principal character mod 4; entire.
pub fn dirichlet_l_chi4<R: Real>(s: Complex<R>) -> Result<Complex<R>> {
    periodic_l(s, 4, &[1.0, 0.0, -1.0, 0.0])
}

/// Dirichlet series with coefficients periodic mod `coeffs.len()`.
pub fn periodic_dirichlet<R: Real>(s: Complex<R>, coeffs: &[f64]) -> Result<Complex<R>> {
    if coeffs.is_empty() {
        return Err(Error::InvalidArgument("empty coefficient period".into()));
    }
    periodic_l(s, coeffs.len(), coeffs)
}

/// Dedekind zeta of Q(i): ζ(s) · L(s, χ₋₄).
pub fn dedekind_gaussian<R: Real>(s: Complex<R>) -> Result<Complex<R>> {
    Ok(zeta(s)? * dirichlet_l_chi4(s)?)
}
