//! Maass–Selberg inner products of truncated Eisenstein series and the
//! closed-form truncated norm on the critical line.

use crate::analytic::{DoubleDouble, Real};
use crate::error::{Error, Result};
use crate::numeric::richardson_halving;
use crate::scattering::{c_generic, ScatteringDatum};
use num_complex::{Complex, Complex64};
use serde::Serialize;

/// Inner products of the cuspidal data: `⟨g₁,g₂⟩, ⟨g₁,g₂^w⟩, ⟨g₁^w,g₂⟩, ⟨g₁^w,g₂^w⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DataMatrix {
    pub gg: Complex64,
    pub g_gw: Complex64,
    pub gw_g: Complex64,
    pub gw_gw: Complex64,
}

impl Default for DataMatrix {
    fn default() -> Self {
        let one = Complex64::new(1.0, 0.0);
        DataMatrix {
            gg: one,
            g_gw: one,
            gw_g: one,
            gw_gw: one,
        }
    }
}

impl DataMatrix {
    /// Hermitian under `g₁ ↔ g₂`.
    pub fn is_hermitian(&self) -> bool {
        let tol = 1e-12;
        self.gg.im.abs() < tol && self.gw_gw.im.abs() < tol && (self.g_gw - self.gw_g.conj()).norm() < tol
    }
}

#[derive(Clone, Debug)]
pub struct MSContext<'a> {
    truncation: f64,
    datum: &'a ScatteringDatum,
    data: DataMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormCheck {
    pub t: f64,
    pub truncation: f64,
    pub closed_form: f64,
    pub extrapolated: f64,
    pub residual: f64,
}

impl<'a> MSContext<'a> {
    pub fn new(truncation: f64, datum: &'a ScatteringDatum) -> Result<Self> {
        Self::with_data(truncation, datum, DataMatrix::default())
    }

    pub fn with_data(truncation: f64, datum: &'a ScatteringDatum, data: DataMatrix) -> Result<Self> {
        if !(truncation.is_finite() && truncation > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "truncation height must exceed 1, got {truncation}"
            )));
        }
        if !data.is_hermitian() {
            return Err(Error::InvalidArgument("data inner products are not Hermitian".into()));
        }
        Ok(MSContext {
            truncation,
            datum,
            data,
        })
    }

    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    pub fn data(&self) -> &DataMatrix {
        &self.data
    }

    /// `⟨∧^T E(s), ∧^T E(r)⟩` by the four-term formula.
    pub fn ms_inner_product(&self, s: Complex64, r: Complex64) -> Result<Complex64> {
        let rb = r.conj();
        let exps = [s + rb - 1.0, s - rb, rb - s, 1.0 - s - rb];
        if let Some(index) = exps.iter().position(|e| e.norm() < 1e-14) {
            return Err(Error::DegenerateExponent { index });
        }
        let ln_t = self.truncation.ln();
        let term = |e: Complex64| (e * ln_t).exp() / e;
        let cs = self.datum.c(s)?;
        let cr = self.datum.c(r)?.conj();
        let d = &self.data;
        Ok(d.gg * term(exps[0])
            + d.g_gw * cr * term(exps[1])
            + d.gw_g * cs * term(exps[2])
            + d.gw_gw * cs * cr * term(exps[3]))
    }

    /// `‖∧^T E(½ + it)‖²`: the `r → s` limit of the four-term formula,
    /// `2 ln T - ψ′(t) + sin(2t ln T - ψ(t))/t` for the default data.
    pub fn truncated_norm_sq(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
        }
        let d = &self.data;
        if (d.gg - d.gw_gw).norm() > 1e-12 {
            return Err(Error::InvalidArgument("norm diverges unless ⟨g,g⟩ = ⟨g^w,g^w⟩".into()));
        }
        let ln_t = self.truncation.ln();
        let phi = self.datum.phase(t)? - 2.0 * t * ln_t;
        let cross = (d.gw_g * Complex64::from_polar(1.0, phi)).im;
        Ok(d.gg.re * (2.0 * ln_t - self.datum.phase_derivative(t)?) - cross / t)
    }

    /// The four-term formula at `r = s + iε`, extrapolated to `ε → 0` over
    /// `ε = 10⁻³, 5·10⁻⁴, 2.5·10⁻⁴`.
    pub fn extrapolated_norm_sq(&self, t: f64) -> Result<f64> {
        let s = Complex64::new(0.5, t);
        let f = |e: f64| self.ms_inner_product(s, Complex64::new(0.5, t + e));
        Ok(richardson_halving(f(1e-3)?, f(5e-4)?, f(2.5e-4)?).re)
    }

    pub fn norm_check(&self, t: f64) -> Result<NormCheck> {
        let closed_form = self.truncated_norm_sq(t)?;
        let extrapolated = self.extrapolated_norm_sq(t)?;
        Ok(NormCheck {
            t,
            truncation: self.truncation,
            closed_form,
            extrapolated,
            residual: (closed_form - extrapolated).abs(),
        })
    }
}

/// `Res_{s=1} c(s)` as the limit of `ε c(1 + ε)` over `ε = 10⁻², 5·10⁻³, 2.5·10⁻³`,
/// with the gap to the two-point estimate as an error indicator.
pub fn residue_at_one_in<R: Real>(datum: &ScatteringDatum) -> Result<(R, f64)> {
    let f = |e: f64| -> Result<Complex<R>> {
        let eps = R::from_f64(e);
        let s = Complex::new(R::one() + eps, R::zero());
        Ok(c_generic(datum.spec(), s)? * Complex::new(eps, R::zero()))
    };
    let (a, b, c) = (f(1e-2)?, f(5e-3)?, f(2.5e-3)?);
    let (eight, six, three, two) = (R::from_f64(8.0), R::from_f64(6.0), R::from_f64(3.0), R::from_f64(2.0));
    let full = (c.re * eight - b.re * six + a.re) / three;
    let two_point = c.re * two - b.re;
    let spread = (full - two_point).abs().to_f64();
    if !(spread < 1e-3) || c.im.abs().to_f64() > 1e-12 {
        return Err(Error::ExtrapolationUnstable { spread });
    }
    Ok((full, spread))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidueReport {
    pub residue: f64,
    pub residue_extended: f64,
    pub spread: f64,
    /// `(s - 1) c(s)` at `s = 1 + 10⁻⁶`
    pub direct: f64,
    pub positive: bool,
}

/// The residue of `c` at its pole `s = 1`, which is the squared norm of the
/// residual Eisenstein series in the model.
pub fn residue_norm_check(datum: &ScatteringDatum) -> Result<ResidueReport> {
    let (residue, spread) = residue_at_one_in::<f64>(datum)?;
    let (ext, _) = residue_at_one_in::<DoubleDouble>(datum)?;
    let e = 1e-6;
    let direct = (datum.c(Complex64::new(1.0 + e, 0.0))? * e).re;
    Ok(ResidueReport {
        residue,
        residue_extended: ext.to_f64(),
        spread,
        direct,
        positive: residue > 0.0,
    })
}
