//! The scattering ratio `c(s) = Λ(2(1-s)) / Λ(2s)`, its tracked phase on the
//! critical line, and the zeros of the truncated constant term
//! `a^s + c(s) a^{1-s}`.

use crate::analytic::real::{cabs, carg, cexp, Real};
use crate::analytic::LFunctionSpec;
use crate::error::{Error, Result};
use crate::numeric::{bisect, richardson_halving};
use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Lower end of the phase table; `t = 0` itself is a degenerate zero.
pub const T_MIN: f64 = 1e-3;
/// Default phase-table spacing.
pub const DEFAULT_STEP: f64 = 0.01;
/// Largest height the special functions are tuned for.
pub const MAX_HEIGHT: f64 = 300.0;
/// Step of the centered difference used for `ψ′`.
pub const PSI_PRIME_STEP: f64 = 1e-4;

const MIN_SUBSTEP: f64 = 1e-7;

/// A zero `½ + i t` of the truncated constant term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantTermZero {
    /// 1-based position in the list.
    pub index: usize,
    pub t: f64,
    /// `Z(t) = (2k + 1) π` on this branch.
    pub branch: i64,
    /// `Z(t) - (2k + 1) π`.
    pub residual: f64,
}

/// `c(s)` for the model built on `spec`, evaluated over any [`Real`].
///
/// The gamma parts are combined as logarithms so that the exponential decay
/// of each completed value never underflows.
pub fn c_generic<R: Real>(spec: &LFunctionSpec, s: Complex<R>) -> Result<Complex<R>> {
    let two = R::from_f64(2.0);
    let one = Complex::new(R::one(), R::zero());
    let (s_num, s_den) = ((one - s) * two, s * two);
    spec.check_poles(s_num)?;
    spec.check_poles(s_den)?;
    let g = spec.gamma_log(s_num)? - spec.gamma_log(s_den)?;
    Ok(cexp(g) * spec.l_value(s_num)? / spec.l_value(s_den)?)
}

/// The scattering model together with a phase table on `[T_MIN, t_max]`.
#[derive(Clone, Debug)]
pub struct ScatteringDatum {
    spec: LFunctionSpec,
    step: f64,
    t_max: f64,
    psi: Vec<f64>,
    real_spec: bool,
}

impl ScatteringDatum {
    /// The GL(2) desk model `c(s) = ξ(2(1-s)) / ξ(2s)` with the default step.
    pub fn desk(t_max: f64) -> Result<Self> {
        Self::new(LFunctionSpec::riemann_zeta(), t_max, DEFAULT_STEP)
    }

    /// Builds the phase table by stepping from the principal argument at
    /// `T_MIN`; a step is halved whenever the raw argument moves by more
    /// than π/2 across it.
    pub fn new(spec: LFunctionSpec, t_max: f64, step: f64) -> Result<Self> {
        if !(t_max > T_MIN) || t_max > MAX_HEIGHT {
            return Err(Error::InvalidArgument(format!(
                "t_max must lie in ({T_MIN}, {MAX_HEIGHT}], got {t_max}"
            )));
        }
        if !(step > 0.0 && step <= DEFAULT_STEP) {
            return Err(Error::InvalidArgument(format!(
                "phase step must lie in (0, {DEFAULT_STEP}], got {step}"
            )));
        }
        spec.validate()?;
        let real_spec = spec.gamma_factors.iter().all(|g| g.shift.im == 0.0);
        let mut datum = ScatteringDatum {
            spec,
            step,
            t_max,
            psi: Vec::new(),
            real_spec,
        };
        let n = ((t_max - T_MIN) / step).ceil() as usize;
        let mut psi = Vec::with_capacity(n + 1);
        let mut c_prev = datum.c_line(T_MIN)?;
        let mut acc = carg(c_prev);
        psi.push(acc);
        for k in 1..=n {
            let t0 = datum.grid(k - 1);
            let t1 = datum.grid(k);
            let (delta, c_end) = datum.walk(t0, t1, c_prev)?;
            acc += delta;
            psi.push(acc);
            c_prev = c_end;
        }
        datum.psi = psi;
        Ok(datum)
    }

    fn grid(&self, k: usize) -> f64 {
        T_MIN + k as f64 * self.step
    }

    /// Phase change from `t0` to `t1`, subdividing until each raw jump is ≤ π/2.
    fn walk(&self, t0: f64, t1: f64, c0: Complex64) -> Result<(f64, Complex64)> {
        let c1 = self.c_line(t1)?;
        let jump = carg(c1 * c0.conj());
        if jump.abs() <= PI / 2.0 {
            return Ok((jump, c1));
        }
        if t1 - t0 < MIN_SUBSTEP {
            return Err(Error::StepTooCoarse { t: t0, jump });
        }
        let mid = 0.5 * (t0 + t1);
        let (d1, cm) = self.walk(t0, mid, c0)?;
        let (d2, c_end) = self.walk(mid, t1, cm)?;
        Ok((d1 + d2, c_end))
    }

    pub fn spec(&self) -> &LFunctionSpec {
        &self.spec
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Grid points and tracked phase values.
    pub fn phase_table(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.psi.iter().enumerate().map(|(k, &p)| (self.grid(k), p))
    }

    /// `c(s)`; at `s = ½` exactly, the limit `c(½ + ε)` as `ε → 0` is taken
    /// by Richardson extrapolation over `ε = 10⁻², 5·10⁻³, 2.5·10⁻³`.
    pub fn c(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(0.5, 0.0) {
            return self.c_at_half();
        }
        c_generic(&self.spec, s)
    }

    /// The limit rule at the fixed point of `s ↦ 1 - s`.
    pub fn c_at_half(&self) -> Result<Complex64> {
        let f = |e: f64| c_generic(&self.spec, Complex64::new(0.5 + e, 0.0));
        Ok(richardson_halving(f(1e-2)?, f(5e-3)?, f(2.5e-3)?))
    }

    /// `c(½ + it)`, using `Λ(1 - 2it) = conj Λ(1 + 2it)` for real specs.
    pub fn c_line_in<R: Real>(&self, t: R) -> Result<Complex<R>> {
        let two = R::from_f64(2.0);
        if self.real_spec {
            // c = conj(u)^2 with u = Λ/|Λ| = e^{i Im log Γ-part} L/|L|
            let s = Complex::new(R::one(), two * t);
            let (sin, cos) = self.spec.gamma_log(s)?.im.sin_cos();
            let l = self.spec.l_value(s)?;
            let u = Complex::new(cos, sin) * (l / cabs(l));
            let v = u.conj();
            Ok(v * v)
        } else {
            c_generic(&self.spec, Complex::new(R::from_f64(0.5), t))
        }
    }

    pub fn c_line(&self, t: f64) -> Result<Complex64> {
        self.c_line_in(t)
    }

    fn check_range(&self, t: f64) -> Result<()> {
        if t.is_finite() && t >= T_MIN && t <= self.t_max {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "t = {t} outside the phase table [{T_MIN}, {}]",
                self.t_max
            )))
        }
    }

    /// Continuous phase `ψ(t)` with `c(½ + it) = e^{iψ(t)}`.
    pub fn phase(&self, t: f64) -> Result<f64> {
        self.check_range(t)?;
        let k = (((t - T_MIN) / self.step).floor() as usize).min(self.psi.len() - 1);
        let ck = self.c_line(self.grid(k))?;
        let ct = self.c_line(t)?;
        Ok(self.psi[k] + carg(ct * ck.conj()))
    }

    /// `ψ′(t)` by centered differences at steps `h` and `h/2`, combined to
    /// fourth order; the two estimates must agree to `1e-6`.
    pub fn phase_derivative_in<R: Real>(&self, t: R) -> Result<R> {
        let d = |h: f64| -> Result<R> {
            let h = R::from_f64(h);
            let up = self.c_line_in(t + h)?;
            let down = self.c_line_in(t - h)?;
            Ok(carg(up * down.conj()) / (h * R::from_f64(2.0)))
        };
        let d1 = d(PSI_PRIME_STEP)?;
        let d2 = d(PSI_PRIME_STEP / 2.0)?;
        let spread = (d1 - d2).abs().to_f64();
        if spread > 1e-6 {
            return Err(Error::ExtrapolationUnstable { spread });
        }
        Ok((d2 * R::from_f64(4.0) - d1) / R::from_f64(3.0))
    }

    pub fn phase_derivative(&self, t: f64) -> Result<f64> {
        self.phase_derivative_in(t)
    }

    /// Total phase `Z(t) = 2t ln a - ψ(t)`.
    pub fn total_phase(&self, a: f64, t: f64) -> Result<f64> {
        Ok(2.0 * t * a.ln() - self.phase(t)?)
    }

    /// `Z′(t) = 2 ln a - ψ′(t)`.
    pub fn total_phase_derivative(&self, a: f64, t: f64) -> Result<f64> {
        Ok(2.0 * a.ln() - self.phase_derivative(t)?)
    }

    /// `a^s + c(s) a^{1-s}`.
    pub fn constant_term(&self, a: f64, s: Complex64) -> Result<Complex64> {
        check_height(a)?;
        let ln_a = a.ln();
        let cs = self.c(s)?;
        Ok((s * ln_a).exp() + cs * ((1.0 - s) * ln_a).exp())
    }

    /// Number of odd multiples of π passed by `Z` between `T_MIN` and `t`,
    /// read off the endpoints alone.
    pub fn winding_count(&self, a: f64, t: f64) -> Result<i64> {
        let z0 = self.total_phase(a, T_MIN)?;
        let z1 = self.total_phase(a, t)?;
        Ok(odd_pi_index(z1) - odd_pi_index(z0))
    }

    /// All zeros `½ + it_j` with `T_MIN < t_j ≤ t_max`.
    ///
    /// Each upward crossing of `Z` through an odd multiple of π on a grid step
    /// is bisected to `|Z - (2k+1)π| < 1e-10`. `Z` is not monotone near
    /// `t = 0` for small `a`; decreasing steps are tolerated unless they
    /// cross an odd multiple of π, which is reported as a violation.
    pub fn zeros(&self, a: f64, t_max: f64) -> Result<Vec<ConstantTermZero>> {
        check_height(a)?;
        if t_max > self.t_max {
            return Err(Error::InvalidArgument(format!(
                "t_max = {t_max} beyond the phase table ({})",
                self.t_max
            )));
        }
        let ln_a = a.ln();
        let z_grid = |k: usize| 2.0 * self.grid(k) * ln_a - self.psi[k];
        let mut out = Vec::new();
        let mut k = 0;
        while k + 1 < self.psi.len() && self.grid(k) < t_max {
            let t0 = self.grid(k);
            let t1 = self.grid(k + 1).min(t_max);
            let z0 = z_grid(k);
            let z1 = if t1 < self.grid(k + 1) {
                self.total_phase(a, t1)?
            } else {
                z_grid(k + 1)
            };
            let (m0, m1) = (odd_pi_index(z0), odd_pi_index(z1));
            if m1 < m0 {
                return Err(Error::MonotonicityViolation {
                    t0,
                    t1,
                    target: (2 * m1 + 1) as f64 * PI,
                });
            }
            for m in m0..m1 {
                let target = (2 * m + 1) as f64 * PI;
                let t = bisect(|t| Ok(self.total_phase(a, t)? - target), t0, t1, 1e-13)?;
                let residual = self.total_phase(a, t)? - target;
                if residual.abs() >= 1e-10 {
                    return Err(Error::NonFinite("zero refinement did not converge"));
                }
                out.push(ConstantTermZero {
                    index: out.len() + 1,
                    t,
                    branch: m,
                    residual,
                });
            }
            k += 1;
        }
        Ok(out)
    }

    /// `ψ′(t)` evaluated in double-double arithmetic at a double `t`.
    pub fn phase_derivative_extended(&self, t: f64) -> Result<f64> {
        self.phase_derivative_in(crate::analytic::DoubleDouble::from(t))
            .map(|v| v.to_f64())
    }
}

/// Index `k` of the last odd multiple `(2k - 1)π` not exceeding `z`, i.e.
/// `⌊(z + π) / 2π⌋`.
fn odd_pi_index(z: f64) -> i64 {
    ((z + PI) / TAU).floor() as i64
}

fn check_height(a: f64) -> Result<()> {
    if a > 1.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("height a must exceed 1, got {a}")))
    }
}

/// Smooth main term of the zero count on `(0, T]`:
/// `(T/π) ln(T/(πe)) + (T/π) ln a`, the mean of `Z(T)/2π` for the desk model.
pub fn count_predicted(a: f64, t: f64) -> f64 {
    t / PI * (t / (PI * std::f64::consts::E)).ln() + t / PI * a.ln()
}

/// Density `N′(T) = ln(aT/π) / π` of the main term.
pub fn density_predicted(a: f64, t: f64) -> f64 {
    (a * t / PI).ln() / PI
}

/// `|observed - count_predicted(a, T)|`.
pub fn count_deviation(observed: usize, a: f64, t: f64) -> f64 {
    (observed as f64 - count_predicted(a, t)).abs()
}

/// Spacing statistics of a zero list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub raw: Vec<f64>,
    /// `(t_{j+1} - t_j) · Z′(t_j) / 2π`.
    pub normalized: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    pub cv: f64,
}

/// Mean, population variance and coefficient of variation.
pub fn moments(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var, var.sqrt() / mean)
}

/// Raw and locally normalized gaps between consecutive zeros.
pub fn gaps(datum: &ScatteringDatum, a: f64, zeros: &[ConstantTermZero]) -> Result<GapReport> {
    if zeros.len() < 10 {
        return Err(Error::InvalidArgument(format!(
            "gap statistics need at least 10 zeros, got {}",
            zeros.len()
        )));
    }
    let mut raw = Vec::with_capacity(zeros.len() - 1);
    let mut normalized = Vec::with_capacity(zeros.len() - 1);
    for w in zeros.windows(2) {
        let g = w[1].t - w[0].t;
        raw.push(g);
        normalized.push(g * datum.total_phase_derivative(a, w[0].t)? / TAU);
    }
    let (mean, variance, cv) = moments(&normalized);
    Ok(GapReport {
        raw,
        normalized,
        mean,
        variance,
        cv,
    })
}

#[cfg(test)]
mod tests;
