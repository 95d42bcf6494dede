//! Completed L-functions `Λ(s) = Q^s · Π Γ(λᵢ s + μᵢ) · L(s)`.

use super::gamma::lngamma;
use super::real::{cexp, cfrom, cto_f64, Real};
use super::zeta::{dedekind_gaussian, dirichlet_l_chi4, periodic_dirichlet, zeta};
use crate::error::{Error, Result};
use crate::numeric::bisect;
use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaFactor {
    pub scale: f64,
    pub shift: Complex64,
}

/// Where the Dirichlet coefficients come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CoefficientSource {
    Zeta,
    Chi4,
    DedekindGaussian,
    /// One period `a(1), ..., a(q)`; continued analytically when the period sums to zero.
    Periodic(Vec<f64>),
    /// Finitely many coefficients `a(1), ..., a(N)`; the value is the plain
    /// truncated sum, meaningful only where that sum converges well.
    Finite(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LFunctionSpec {
    pub name: String,
    pub degree: u32,
    pub gamma_factors: Vec<GammaFactor>,
    /// The `Q` in `Q^s`.
    pub conductor: f64,
    pub coefficients: CoefficientSource,
    pub poles: Vec<Complex64>,
}

fn chi4(n: u64) -> f64 {
    match n % 4 {
        1 => 1.0,
        3 => -1.0,
        _ => 0.0,
    }
}

impl LFunctionSpec {
    /// ζ(s) with `ξ(s) = π^{-s/2} Γ(s/2) ζ(s)`.
    pub fn riemann_zeta() -> Self {
        LFunctionSpec {
            name: "zeta".into(),
            degree: 1,
            gamma_factors: vec![GammaFactor {
                scale: 0.5,
                shift: Complex64::new(0.0, 0.0),
            }],
            conductor: std::f64::consts::PI.sqrt().recip(),
            coefficients: CoefficientSource::Zeta,
            poles: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// L(s, χ₋₄) completed as `(2/√π)^s Γ((s+1)/2) L(s, χ₋₄)`.
    pub fn chi4() -> Self {
        LFunctionSpec {
            name: "chi4".into(),
            degree: 1,
            gamma_factors: vec![GammaFactor {
                scale: 0.5,
                shift: Complex64::new(0.5, 0.0),
            }],
            conductor: 2.0 / std::f64::consts::PI.sqrt(),
            coefficients: CoefficientSource::Chi4,
            poles: vec![],
        }
    }

    /// Dedekind zeta of Q(i), completed as `π^{-s} Γ(s) ζ(s) L(s, χ₋₄)`.
    ///
    /// Equals `completed(zeta) · completed(chi4) / (2√π)`.
    pub fn dedekind_gaussian() -> Self {
        LFunctionSpec {
            name: "dedekind_gaussian".into(),
            degree: 2,
            gamma_factors: vec![GammaFactor {
                scale: 1.0,
                shift: Complex64::new(0.0, 0.0),
            }],
            conductor: std::f64::consts::PI.recip(),
            coefficients: CoefficientSource::DedekindGaussian,
            poles: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// Looks up one of the built-in specs by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "zeta" => Some(Self::riemann_zeta()),
            "chi4" => Some(Self::chi4()),
            "dedekind_gaussian" => Some(Self::dedekind_gaussian()),
            _ => None,
        }
    }

    /// Dirichlet coefficient `a(n)`, `n ≥ 1`.
    pub fn coefficient(&self, n: u64) -> f64 {
        assert!(n >= 1);
        match &self.coefficients {
            CoefficientSource::Zeta => 1.0,
            CoefficientSource::Chi4 => chi4(n),
            CoefficientSource::DedekindGaussian => {
                let mut sum = 0.0;
                let mut d = 1;
                while d * d <= n {
                    if n.is_multiple_of(d) {
                        sum += chi4(d);
                        if d * d != n {
                            sum += chi4(n / d);
                        }
                    }
                    d += 1;
                }
                sum
            }
            CoefficientSource::Periodic(p) => p[((n - 1) % p.len() as u64) as usize],
            CoefficientSource::Finite(v) => v.get((n - 1) as usize).copied().unwrap_or(0.0),
        }
    }

    /// Checks `a(1) = 1` and that the degree is `Σ 2λᵢ`.
    pub fn validate(&self) -> Result<()> {
        if !(self.conductor > 0.0 && self.conductor.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "{}: conductor must be positive",
                self.name
            )));
        }
        match &self.coefficients {
            CoefficientSource::Periodic(v) | CoefficientSource::Finite(v) if v.is_empty() => {
                return Err(Error::InvalidArgument(format!("{}: no coefficients", self.name)));
            }
            _ => {}
        }
        if self.coefficient(1) != 1.0 {
            return Err(Error::InvalidArgument(format!("{}: a(1) must be 1", self.name)));
        }
        let counted: f64 = self.gamma_factors.iter().map(|g| 2.0 * g.scale).sum();
        if (counted - self.degree as f64).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "{}: degree {} does not match gamma data (sum of 2*scale = {counted})",
                self.name, self.degree
            )));
        }
        Ok(())
    }

    /// The finite L-function `L(s)`.
    pub fn l_value<R: Real>(&self, s: Complex<R>) -> Result<Complex<R>> {
        match &self.coefficients {
            CoefficientSource::Zeta => zeta(s),
            CoefficientSource::Chi4 => dirichlet_l_chi4(s),
            CoefficientSource::DedekindGaussian => dedekind_gaussian(s),
            CoefficientSource::Periodic(p) => {
                let sum: f64 = p.iter().sum();
                if sum != 0.0 {
                    self.check_poles(s)?;
                }
                periodic_dirichlet(s, p)
            }
            CoefficientSource::Finite(v) => {
                let mut acc = Complex::new(R::zero(), R::zero());
                for (i, &a) in v.iter().enumerate() {
                    if a != 0.0 {
                        let ln_n = R::from_i64(i as i64 + 1).ln();
                        acc = acc + cexp(-s * ln_n) * R::from_f64(a);
                    }
                }
                Ok(acc)
            }
        }
    }

    pub fn check_poles<R: Real>(&self, s: Complex<R>) -> Result<()> {
        let z = cto_f64(s);
        for p in &self.poles {
            if (z - p).norm() < 1e-14 {
                return Err(Error::Pole {
                    function: self.name.clone(),
                    re: p.re,
                    im: p.im,
                });
            }
        }
        Ok(())
    }

    /// `log(Q^s Π Γ(λᵢ s + μᵢ))`, continuous along vertical lines.
    pub fn gamma_log<R: Real>(&self, s: Complex<R>) -> Result<Complex<R>> {
        let mut acc = s * R::from_f64(self.conductor).ln();
        for g in &self.gamma_factors {
            let z = s * R::from_f64(g.scale) + cfrom::<R>(g.shift);
            acc = acc + lngamma(z)?;
        }
        Ok(acc)
    }

    /// `Λ(s)`; poles of the gamma factors or of `L` are reported as errors.
    pub fn completed<R: Real>(&self, s: Complex<R>) -> Result<Complex<R>> {
        self.check_poles(s)?;
        let g = self.gamma_log(s)?;
        let l = self.l_value(s)?;
        Ok(cexp(g) * l)
    }

    /// Real-valued rotation `Re(e^{iθ(t)} L(½+it))` with `θ(t) = Im log(Q^s ΠΓ)`.
    ///
    /// For a self-dual real spec `Λ(½+it)` is real, so this has the sign of
    /// `Λ(½+it)` and the same zeros, without its exponential decay.
    pub fn hardy_z(&self, t: f64) -> Result<f64> {
        let s = Complex64::new(0.5, t);
        let theta = self.gamma_log(s)?.im;
        let l = self.l_value(s)?;
        Ok((Complex64::from_polar(1.0, theta) * l).re)
    }

    /// Zeros `½+it` with `t_lo < t ≤ t_hi`, located by sign changes of
    /// [`hardy_z`](Self::hardy_z) on a grid of width `step` and refined by bisection.
    pub fn critical_zeros(&self, t_lo: f64, t_hi: f64, step: f64) -> Result<Vec<f64>> {
        if !(step > 0.0) || t_hi <= t_lo {
            return Err(Error::InvalidArgument("empty scan range or step".into()));
        }
        let mut zeros = Vec::new();
        let n = ((t_hi - t_lo) / step).ceil() as usize;
        let mut t0 = t_lo;
        let mut z0 = self.hardy_z(t0)?;
        for i in 1..=n {
            let t1 = (t_lo + i as f64 * step).min(t_hi);
            let z1 = self.hardy_z(t1)?;
            if z1 == 0.0 {
                zeros.push(t1);
            } else if z0 != 0.0 && z0.signum() != z1.signum() {
                zeros.push(bisect(|t| self.hardy_z(t), t0, t1, 1e-12)?);
            }
            t0 = t1;
            z0 = z1;
        }
        Ok(zeros)
    }

    /// Parses the plain-text spec format.
    ///
    /// ```text
    /// # comment
    /// name = my-l
    /// degree = 1
    /// conductor = 0.5641895835477563
    /// gamma = 0.5 0 0        # scale, Re shift, Im shift (repeatable)
    /// pole = 1 0             # Re, Im (repeatable)
    /// periodic = false       # rows are one period of a(n) when true
    /// 1,1
    /// 2,0.7071
    /// ```
    ///
    /// Coefficient rows `n,a(n)` follow the header; missing `n` have `a(n) = 0`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut degree = None;
        let mut conductor = None;
        let mut gammas = Vec::new();
        let mut poles = Vec::new();
        let mut periodic = false;
        let mut coeffs: Vec<f64> = Vec::new();
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let num = |line: usize, s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| perr(line, format!("bad number {s:?}: {e}")))
        };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once('=') {
                let value = value.trim();
                match key.trim() {
                    "name" => name = Some(value.to_string()),
                    "degree" => {
                        degree = Some(
                            value
                                .parse::<u32>()
                                .map_err(|e| perr(line_no, format!("bad degree: {e}")))?,
                        )
                    }
                    "conductor" => conductor = Some(num(line_no, value)?),
                    "gamma" => {
                        let f: Vec<&str> = value.split_whitespace().collect();
                        if f.len() != 3 {
                            return Err(perr(line_no, "gamma needs scale, re, im".into()));
                        }
                        gammas.push(GammaFactor {
                            scale: num(line_no, f[0])?,
                            shift: Complex64::new(num(line_no, f[1])?, num(line_no, f[2])?),
                        });
                    }
                    "pole" => {
                        let f: Vec<&str> = value.split_whitespace().collect();
                        if f.len() != 2 {
                            return Err(perr(line_no, "pole needs re, im".into()));
                        }
                        poles.push(Complex64::new(num(line_no, f[0])?, num(line_no, f[1])?));
                    }
                    "periodic" => {
                        periodic = value
                            .parse::<bool>()
                            .map_err(|e| perr(line_no, format!("bad flag: {e}")))?
                    }
                    other => return Err(perr(line_no, format!("unknown key {other:?}"))),
                }
            } else if let Some((n, a)) = line.split_once(',') {
                let n = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| perr(line_no, format!("bad index: {e}")))?;
                if n == 0 {
                    return Err(perr(line_no, "indices start at 1".into()));
                }
                if coeffs.len() < n {
                    coeffs.resize(n, 0.0);
                }
                coeffs[n - 1] = num(line_no, a)?;
            } else {
                return Err(perr(line_no, format!("unrecognized line {line:?}")));
            }
        }
        let spec = LFunctionSpec {
            name: name.ok_or_else(|| perr(0, "missing name".into()))?,
            degree: degree.ok_or_else(|| perr(0, "missing degree".into()))?,
            gamma_factors: gammas,
            conductor: conductor.ok_or_else(|| perr(0, "missing conductor".into()))?,
            coefficients: if periodic {
                CoefficientSource::Periodic(coeffs)
            } else {
                CoefficientSource::Finite(coeffs)
            },
            poles,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// `Λ(s)` for `spec` in double precision.
pub fn completed(spec: &LFunctionSpec, s: Complex64) -> Result<Complex64> {
    spec.completed(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::dd::DoubleDouble;
    use crate::analytic::zeta::tests::eta_oracle_zeta;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn strip_grid() -> Vec<Complex64> {
        let mut g = Vec::new();
        for i in 0..4 {
            for j in 0..5 {
                g.push(c(0.1 + 0.2 * i as f64 + 0.05, 0.7 + 6.3 * j as f64));
            }
        }
        g
    }

    #[test]
    fn builtins_validate() {
        for name in ["zeta", "chi4", "dedekind_gaussian"] {
            LFunctionSpec::builtin(name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn xi_functional_equation() {
        let z = LFunctionSpec::riemann_zeta();
        for s in strip_grid() {
            let a = z.completed(s).unwrap();
            let b = z.completed(1.0 - s).unwrap();
            assert!((a - b).norm() < 1e-10, "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn chi4_functional_equation() {
        let l = LFunctionSpec::chi4();
        for s in strip_grid() {
            let a = l.completed(s).unwrap();
            let b = l.completed(1.0 - s).unwrap();
            assert!((a - b).norm() < 1e-9, "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn gaussian_dedekind_factorises() {
        let k = LFunctionSpec::dedekind_gaussian();
        let z = LFunctionSpec::riemann_zeta();
        let l = LFunctionSpec::chi4();
        for s in strip_grid() {
            let lhs = k.completed(s).unwrap();
            let rhs = z.completed(s).unwrap() * l.completed(s).unwrap() / (2.0 * PI.sqrt());
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1e-3), "s = {s}");
        }
    }

    #[test]
    fn xi_at_three_matches_direct_definition() {
        // ζ(3) by direct summation with an integral tail correction
        let n = 200_000u64;
        let mut z3 = 0.0f64;
        for k in (1..=n).rev() {
            z3 += 1.0 / (k as f64).powi(3);
        }
        let nf = n as f64;
        z3 += 1.0 / (2.0 * nf * nf) - 1.0 / (2.0 * nf.powi(3)) + 1.0 / (4.0 * nf.powi(4));
        let direct = PI.powf(-1.5) * (PI.sqrt() / 2.0) * z3;
        let v = LFunctionSpec::riemann_zeta().completed(c(3.0, 0.0)).unwrap();
        assert!((v.re - direct).abs() < 1e-12, "{} vs {}", v.re, direct);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn poles_are_reported() {
        let z = LFunctionSpec::riemann_zeta();
        assert!(matches!(z.completed(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(z.completed(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn gaussian_dedekind_at_two() {
        let mut s = 0.0f64;
        let mut prev = 0.0;
        for k in 0..200_000u64 {
            prev = s;
            let t = 1.0 / ((2 * k + 1) as f64).powi(2);
            s += if k % 2 == 0 { t } else { -t };
        }
        let catalan = 0.5 * (s + prev);
        let v = dedekind_gaussian(c(2.0, 0.0)).unwrap();
        assert!((v.re - PI * PI / 6.0 * catalan).abs() < 1e-10);
    }

    /// Riemann-Siegel theta from its asymptotic series (independent of lngamma).
    fn rs_theta(t: f64) -> f64 {
        t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3))
    }

    #[test]
    fn first_zeta_zero_against_eta_oracle() {
        let oracle = |t: f64| Ok((Complex64::from_polar(1.0, rs_theta(t)) * eta_oracle_zeta(c(0.5, t))).re);
        let t_oracle = bisect(oracle, 14.0, 14.3, 1e-12).unwrap();
        let zeros = LFunctionSpec::riemann_zeta().critical_zeros(10.0, 15.0, 0.02).unwrap();
        assert_eq!(zeros.len(), 1);
        assert!((zeros[0] - t_oracle).abs() < 1e-6);
        assert!((zeros[0] - 14.134725141734693).abs() < 1e-9);
        assert!(zeta(c(0.5, 14.1347251)).unwrap().norm() < 1e-6);
        assert!(dedekind_gaussian(c(0.5, zeros[0])).unwrap().norm() < 1e-9);
    }

    #[test]
    fn hardy_rotation_is_real() {
        for spec in [LFunctionSpec::riemann_zeta(), LFunctionSpec::chi4()] {
            for t in [3.0, 17.5, 99.0, 250.0] {
                let s = c(0.5, t);
                let v = Complex64::from_polar(1.0, spec.gamma_log(s).unwrap().im) * spec.l_value(s).unwrap();
                assert!(v.im.abs() < 1e-9 * v.norm().max(1.0), "{} at {t}: {v}", spec.name);
            }
        }
    }

    #[test]
    fn zero_counts_match_known_values() {
        // 29 zeta zeros below 100; chi4 zeros begin at 6.0209489...
        let z = LFunctionSpec::riemann_zeta().critical_zeros(1.0, 100.0, 0.02).unwrap();
        assert_eq!(z.len(), 29);
        let l = LFunctionSpec::chi4().critical_zeros(1.0, 20.0, 0.02).unwrap();
        assert!((l[0] - 6.020948904697597).abs() < 1e-9, "{l:?}");
        let k = LFunctionSpec::dedekind_gaussian()
            .critical_zeros(1.0, 20.0, 0.02)
            .unwrap();
        let mut union: Vec<f64> = l
            .iter()
            .copied()
            .chain(LFunctionSpec::riemann_zeta().critical_zeros(1.0, 20.0, 0.02).unwrap())
            .collect();
        union.sort_by(f64::total_cmp);
        assert_eq!(k.len(), union.len());
        for (a, b) in k.iter().zip(&union) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn double_double_completed_agrees() {
        let z = LFunctionSpec::riemann_zeta();
        for s in [c(0.3, 12.0), c(2.0, 40.0)] {
            let d = z.completed(s).unwrap();
            let e = cto_f64(
                z.completed(Complex::new(DoubleDouble::from(s.re), DoubleDouble::from(s.im)))
                    .unwrap(),
            );
            assert!((d - e).norm() < 1e-9 * d.norm(), "{d} vs {e}");
        }
    }

    #[test]
    fn parse_round_trip_of_zeta_like_file() {
        let text = "# truncated zeta\nname = z10\ndegree = 1\nconductor = 0.5641895835477563\n\
                    gamma = 0.5 0 0\npole = 1 0\n1,1\n2,1\n3,1\n";
        let spec = LFunctionSpec::parse(text).unwrap();
        assert_eq!(spec.coefficient(3), 1.0);
        assert_eq!(spec.coefficient(4), 0.0);
        let v = spec.l_value(c(2.0, 0.0)).unwrap();
        assert!((v.re - (1.0 + 0.25 + 1.0 / 9.0)).abs() < 1e-15);
        let periodic = "name = chi4copy\ndegree = 1\nconductor = 1.1283791670955126\n\
                        gamma = 0.5 0.5 0\nperiodic = true\n1,1\n2,0\n3,-1\n4,0\n";
        let spec = LFunctionSpec::parse(periodic).unwrap();
        let a = spec.completed(c(0.5, 6.0)).unwrap();
        let b = LFunctionSpec::chi4().completed(c(0.5, 6.0)).unwrap();
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn parse_rejects_inconsistent_degree() {
        let text = "name = bad\ndegree = 2\nconductor = 1\ngamma = 0.5 0 0\n1,1\n";
        assert!(LFunctionSpec::parse(text).is_err());
        let text = "name = bad\ndegree = 1\nconductor = 1\ngamma = 0.5 0 0\n1,2\n";
        assert!(LFunctionSpec::parse(text).is_err());
        assert!(matches!(
            LFunctionSpec::parse("degree = x"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
