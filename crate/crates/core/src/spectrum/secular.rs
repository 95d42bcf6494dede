use super::SpectralLine;
use crate::error::{Error, Result};
use crate::numeric::bisect;
use num_complex::Complex64;
use serde::Serialize;

/// Minimum distance from a pole accepted by [`theta_v`].
pub const POLE_GUARD: f64 = 1e-6;
const ROOT_TOL: f64 = 1e-10;
const TAIL_Y_MAX: f64 = 50.0;
const TAIL_INTERVALS: usize = 1000;

/// A root `w = ½ + iτ` of `θv_w` between two consecutive zeros.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscreteRoot {
    /// 1-based index `j` of the bracket `(t_j, t_{j+1})`
    pub bracket: usize,
    pub tau: f64,
    pub lo: f64,
    pub hi: f64,
    /// `θv` at the root
    pub residual: f64,
    /// largest single term `|w_j / (λ_j - λ_w)|` at the root
    pub scale: f64,
    /// `-dθv/dτ = Σ w_j (-dλ_w/dτ) / (λ_j - λ_w)²`, a sum of positive terms
    pub deriv_cert: f64,
}

/// Simpson rule for `w̄ ∫_{u0}^∞ ρ(u) g(λ(u) - λ_w) du` on `u = u0 e^y`.
fn tail_integral<F>(line: &SpectralLine, lambda_w: Complex64, g: F) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let u0 = line.tail.u0;
    let h = TAIL_Y_MAX / TAIL_INTERVALS as f64;
    let f = |y: f64| {
        let u = u0 * y.exp();
        g(line.lambda_line(u) - lambda_w) * (line.density(u) * u)
    };
    let mut acc = f(0.0) + f(TAIL_Y_MAX);
    for k in 1..TAIL_INTERVALS {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(k as f64 * h) * w;
    }
    acc * (h / 3.0) * line.tail.mean_weight
}

fn sum_terms(line: &SpectralLine, lambda_w: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, l) in line.weights.iter().zip(&line.lambdas) {
        acc += *w / (*l - lambda_w);
    }
    acc + tail_integral(line, lambda_w, |d| d.inv())
}

/// The tail-model contribution to `θv(½ + iτ)`.
pub fn tail_value(line: &SpectralLine, tau: f64) -> f64 {
    tail_integral(line, Complex64::new(line.lambda_line(tau), 0.0), |d| d.inv()).re
}

fn eval_unchecked(line: &SpectralLine, tau: f64) -> f64 {
    sum_terms(line, Complex64::new(line.lambda_line(tau), 0.0)).re
}

/// `θv(½ + iτ) = Σ_j w_j / (λ_j - λ_w)` plus the tail model.
pub fn theta_v(line: &SpectralLine, tau: f64) -> Result<f64> {
    for (j, z) in line.zeros.iter().enumerate() {
        let distance = (tau - z.t).abs();
        if distance < POLE_GUARD {
            return Err(Error::TooCloseToPole {
                tau,
                index: j + 1,
                distance,
            });
        }
    }
    Ok(eval_unchecked(line, tau))
}

/// `θv_w` at a complex `w`, tail included.
pub fn theta_v_complex(line: &SpectralLine, w: Complex64) -> Complex64 {
    sum_terms(line, super::lambda_of(w, line.options.model))
}

/// `-dθv/dτ` on the line; every term is positive for `τ > 0`.
pub fn theta_v_derivative_certificate(line: &SpectralLine, tau: f64) -> f64 {
    let lw = line.lambda_line(tau);
    let slope = -line.lambda_line_slope(tau);
    let mut acc = 0.0;
    for (w, l) in line.weights.iter().zip(&line.lambdas) {
        acc += w * slope / (l - lw).powi(2);
    }
    let tail = tail_integral(line, Complex64::new(lw, 0.0), |d| (d * d).inv());
    acc + slope * tail.re
}

fn term_scale(line: &SpectralLine, tau: f64) -> f64 {
    let lw = line.lambda_line(tau);
    line.weights
        .iter()
        .zip(&line.lambdas)
        .map(|(w, l)| (w / (l - lw)).abs())
        .fold(0.0, f64::max)
}

/// One root per bracket `(t_j, t_{j+1})` inside the window, by bisection
/// to width `1e-10`.
///
/// `θv` runs from `+∞` just above `t_j` to `-∞` just below `t_{j+1}`; a
/// bracket without a sign change is reported as an error.
pub fn discrete_roots(line: &SpectralLine) -> Result<Vec<DiscreteRoot>> {
    if line.window_len < 2 {
        return Err(Error::InvalidArgument("need at least two zeros in the window".into()));
    }
    let mut out = Vec::with_capacity(line.window_len - 1);
    for j in 0..line.window_len - 1 {
        let (tj, tk) = (line.zeros[j].t, line.zeros[j + 1].t);
        let mut delta = 2.0 * POLE_GUARD;
        let (lo, hi) = loop {
            let (lo, hi) = (tj + delta, tk - delta);
            if eval_unchecked(line, lo) > 0.0 && eval_unchecked(line, hi) < 0.0 {
                break (lo, hi);
            }
            delta *= 1e-2;
            if delta < 1e-12 * tk {
                return Err(Error::NoSignChange {
                    index: j + 1,
                    lo: tj,
                    hi: tk,
                });
            }
        };
        let mut tau = bisect(|t| Ok(eval_unchecked(line, t)), lo, hi, ROOT_TOL)?;
        let mut residual = eval_unchecked(line, tau);
        // Newton polish; steep brackets leave a visible residual at width 1e-10
        for _ in 0..3 {
            let next = tau + residual / theta_v_derivative_certificate(line, tau);
            if !(next > lo && next < hi) {
                break;
            }
            let r = eval_unchecked(line, next);
            if r.abs() >= residual.abs() {
                break;
            }
            tau = next;
            residual = r;
        }
        out.push(DiscreteRoot {
            bracket: j + 1,
            tau,
            lo: tj,
            hi: tk,
            residual,
            scale: term_scale(line, tau),
            deriv_cert: theta_v_derivative_certificate(line, tau),
        });
    }
    Ok(out)
}
