//! The θ-restricted discrete spectrum: spectral weights on the constant-term
//! zeros, the secular function θv, its interlacing roots, and spacing
//! statistics.

mod secular;
mod stats;

pub use secular::{discrete_roots, tail_value, theta_v, theta_v_complex, theta_v_derivative_certificate, DiscreteRoot};
pub use stats::{
    eigenvalue_candidates, line_counting, pair_correlation, Bin, Match, PairCorrelation, SparsityReport,
    DEFAULT_MATCH_TOL,
};

use crate::analytic::{dedekind_gaussian, zeta, DoubleDouble, LFunctionSpec, Precision, Real};
use crate::error::{Error, Result};
use crate::maass_selberg::MSContext;
use crate::scattering::{count_predicted, density_predicted, ConstantTermZero, ScatteringDatum, MAX_HEIGHT};
use num_complex::{Complex, Complex64};
use serde::Serialize;

/// Linear functionals `θ` applied to Eisenstein series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThetaProvider {
    /// Evaluation at `i`: `θE_s = ζ_{Q(i)}(s) / ζ(2s)`.
    DeltaAtI,
    /// `θE_s = ζ(s) / ζ(2s)`.
    ZetaRatio,
    /// `θE_s = 1`, which has no zeros.
    Constant,
}

impl ThetaProvider {
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "delta-at-i" => Ok(Self::DeltaAtI),
            "zeta-ratio" => Ok(Self::ZetaRatio),
            "constant" => Ok(Self::Constant),
            _ => Err(Error::InvalidArgument(format!(
                "unknown theta provider {name} (expected delta-at-i, zeta-ratio or constant)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::DeltaAtI => "delta-at-i",
            Self::ZetaRatio => "zeta-ratio",
            Self::Constant => "constant",
        }
    }

    pub fn eval_in<R: Real>(self, s: Complex<R>) -> Result<Complex<R>> {
        let two = Complex::new(R::from_f64(2.0), R::zero());
        match self {
            Self::DeltaAtI => Ok(dedekind_gaussian(s)? / zeta(s * two)?),
            Self::ZetaRatio => Ok(zeta(s)? / zeta(s * two)?),
            Self::Constant => Ok(Complex::new(R::one(), R::zero())),
        }
    }

    pub fn eval(self, s: Complex64) -> Result<Complex64> {
        self.eval_in(s)
    }

    /// The L-functions whose critical zeros are the zeros of `t ↦ θE_{½+it}`.
    pub fn factors(self) -> Vec<LFunctionSpec> {
        match self {
            Self::DeltaAtI => vec![LFunctionSpec::riemann_zeta(), LFunctionSpec::chi4()],
            Self::ZetaRatio => vec![LFunctionSpec::riemann_zeta()],
            Self::Constant => Vec::new(),
        }
    }

    /// Sorted zeros of `t ↦ θE_{½+it}` on `(t_lo, t_hi]`, from the real
    /// rotations of each factor.
    pub fn line_zeros(self, t_lo: f64, t_hi: f64) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for f in self.factors() {
            out.extend(f.critical_zeros(t_lo, t_hi, 0.02)?);
        }
        out.sort_by(f64::total_cmp);
        Ok(out)
    }

    /// Smooth count of the zeros on `(0, t]`: `Σ (t/2π) ln(q t / 2πe)` over
    /// the factors, `q` the conductor of each.
    pub fn zero_counting(self, t: f64) -> f64 {
        let conductors: &[f64] = match self {
            Self::DeltaAtI => &[1.0, 4.0],
            Self::ZetaRatio => &[1.0],
            Self::Constant => &[],
        };
        let two_pi = std::f64::consts::TAU;
        conductors
            .iter()
            .map(|q| t / two_pi * (q * t / (two_pi * std::f64::consts::E)).ln())
            .sum()
    }
}

/// Eigenvalue parametrization `λ(s)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum LambdaModel {
    /// `s(s - 1)`
    #[default]
    Gl2,
    /// `4s² + 4sf² - 8sf - 4s`
    Gl4 { sf: f64 },
}

pub fn lambda_of(s: Complex64, model: LambdaModel) -> Complex64 {
    match model {
        LambdaModel::Gl2 => s * (s - 1.0),
        LambdaModel::Gl4 { sf } => 4.0 * s * s + 4.0 * sf * sf - 8.0 * sf - 4.0 * s,
    }
}

/// Options for [`build_line`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LineOptions {
    /// Zeros retained above the window, summed exactly before the tail model.
    pub tail_terms: usize,
    pub precision: Precision,
    pub model: LambdaModel,
}

pub const DEFAULT_TAIL_TERMS: usize = 100;
/// Relative height step when `θE` nearly vanishes at a zero.
pub const HEIGHT_ADJUSTMENT: f64 = 1.01;
pub const MAX_ADJUSTMENTS: usize = 5;
/// `|θE_{s_j}|` below this triggers a height adjustment.
pub const THETA_FLOOR: f64 = 1e-8;

impl Default for LineOptions {
    fn default() -> Self {
        LineOptions {
            tail_terms: DEFAULT_TAIL_TERMS,
            precision: Precision::Double,
            model: LambdaModel::Gl2,
        }
    }
}

/// Average-weight × density model for the zeros above the last retained one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailModel {
    /// lower limit: half a mean gap above the last retained zero
    pub u0: f64,
    pub mean_weight: f64,
}

/// Spectral data on the constant-term zeros at height `a`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralLine {
    pub a: f64,
    pub requested_a: f64,
    pub adjustments: usize,
    pub t_max: f64,
    pub provider: ThetaProvider,
    pub options: LineOptions,
    /// zeros in the window followed by `tail_terms` more
    pub zeros: Vec<ConstantTermZero>,
    /// number of zeros with `t_j ≤ t_max`
    pub window_len: usize,
    #[serde(skip)]
    pub theta: Vec<Complex64>,
    pub norms: Vec<f64>,
    pub weights: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub tail: TailModel,
}

impl SpectralLine {
    pub fn window_zeros(&self) -> &[ConstantTermZero] {
        &self.zeros[..self.window_len]
    }

    /// `λ(½ + it)`, real on the line.
    pub fn lambda_line(&self, t: f64) -> f64 {
        lambda_of(Complex64::new(0.5, t), self.options.model).re
    }

    /// `dλ(½ + iτ)/dτ`.
    pub fn lambda_line_slope(&self, tau: f64) -> f64 {
        match self.options.model {
            LambdaModel::Gl2 => -2.0 * tau,
            LambdaModel::Gl4 { .. } => -8.0 * tau,
        }
    }

    /// The zero density used by the tail model.
    pub fn density(&self, u: f64) -> f64 {
        density_predicted(self.a, u)
    }
}

fn height_for(a: f64, t_max: f64, extra: usize) -> f64 {
    let target = count_predicted(a, t_max) + extra as f64 + 8.0;
    let mut h = t_max.max(10.0);
    while count_predicted(a, h) < target && h < MAX_HEIGHT {
        h = (h + 5.0).min(MAX_HEIGHT);
    }
    h
}

fn truncated_norm_extended(datum: &ScatteringDatum, a: f64, t: f64) -> Result<f64> {
    let ln_a = a.ln();
    let dpsi = datum.phase_derivative_extended(t)?;
    Ok(2.0 * ln_a - dpsi + (2.0 * t * ln_a - datum.phase(t)?).sin() / t)
}

fn try_height(a: f64, t_max: f64, theta: ThetaProvider, opts: &LineOptions) -> Result<Option<SpectralLine>> {
    let h = height_for(a, t_max, opts.tail_terms);
    let datum = ScatteringDatum::desk(h)?;
    let all = datum.zeros(a, h)?;
    let window_len = all.iter().take_while(|z| z.t <= t_max).count();
    let keep = window_len + opts.tail_terms;
    if all.len() < keep || window_len < 2 {
        return Err(Error::InvalidArgument(format!(
            "only {} zeros below {h}, need {keep} with at least 2 in the window",
            all.len()
        )));
    }
    let zeros = all[..keep].to_vec();
    let ctx = MSContext::new(a, &datum)?;
    let (mut theta_vals, mut norms, mut weights) = (Vec::new(), Vec::new(), Vec::new());
    for z in &zeros {
        let s = Complex64::new(0.5, z.t);
        let (th, norm, w) = match opts.precision {
            Precision::Double => {
                let th = theta.eval(s)?;
                let norm = ctx.truncated_norm_sq(z.t)?;
                (th, norm, th.norm_sqr() / norm)
            }
            Precision::Extended => {
                let v = theta.eval_in(Complex::new(DoubleDouble::from(0.5), DoubleDouble::from(z.t)))?;
                let norm = truncated_norm_extended(&datum, a, z.t)?;
                let w = (v.re * v.re + v.im * v.im) / DoubleDouble::from(norm);
                (Complex64::new(v.re.to_f64(), v.im.to_f64()), norm, w.to_f64())
            }
        };
        if th.norm() < THETA_FLOOR {
            return Ok(None);
        }
        if !(norm > 0.0) {
            return Err(Error::NonFinite("truncated norm is not positive"));
        }
        theta_vals.push(th);
        norms.push(norm);
        weights.push(w);
    }
    let last = zeros[keep - 1].t;
    let n_fit = 10.min(keep);
    let mean_weight = weights[keep - n_fit..].iter().sum::<f64>() / n_fit as f64;
    let mut line = SpectralLine {
        a,
        requested_a: a,
        adjustments: 0,
        t_max,
        provider: theta,
        options: *opts,
        zeros,
        window_len,
        theta: theta_vals,
        norms,
        weights,
        lambdas: Vec::new(),
        tail: TailModel {
            u0: last + 0.5 / density_predicted(a, last),
            mean_weight,
        },
    };
    line.lambdas = line.zeros.iter().map(|z| line.lambda_line(z.t)).collect();
    Ok(Some(line))
}

/// Zeros, norms and weights `w_j = |θE_{s_j}|² / ‖∧^a E_{s_j}‖²` at height `a`.
///
/// If `θE` nearly vanishes at a retained zero, `a` is raised by 1% and the
/// line rebuilt, at most [`MAX_ADJUSTMENTS`] times.
pub fn build_line(a: f64, t_max: f64, theta: ThetaProvider, opts: &LineOptions) -> Result<SpectralLine> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("height a must exceed 1, got {a}")));
    }
    if !(t_max > 0.0 && t_max <= MAX_HEIGHT) {
        return Err(Error::InvalidArgument(format!(
            "t_max must lie in (0, {MAX_HEIGHT}], got {t_max}"
        )));
    }
    let mut cur = a;
    for k in 0..=MAX_ADJUSTMENTS {
        if let Some(mut line) = try_height(cur, t_max, theta, opts)? {
            line.requested_a = a;
            line.adjustments = k;
            return Ok(line);
        }
        cur *= HEIGHT_ADJUSTMENT;
    }
    Err(Error::AdjustmentExhausted {
        retries: MAX_ADJUSTMENTS,
        a: cur / HEIGHT_ADJUSTMENT,
    })
}
