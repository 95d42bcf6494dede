use super::{DiscreteRoot, SpectralLine, ThetaProvider};
use crate::error::{Error, Result};
use crate::scattering::{count_predicted, moments};
use serde::Serialize;

pub const DEFAULT_MATCH_TOL: f64 = 1e-4;
/// Match lists at most this long count as consistent with a sparse spectrum.
pub const SPARSE_MATCHES: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Match {
    pub bracket: usize,
    pub tau: f64,
    pub theta_zero: f64,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparsityReport {
    pub tol: f64,
    pub theta_zeros: Vec<f64>,
    /// distance from each root to the nearest θE zero
    pub nearest: Vec<f64>,
    pub matches: Vec<Match>,
    /// decade bins `[10^k, 10^{k+1})` of `nearest`, from `10^-12` to `10^2`
    pub histogram: Vec<Bin>,
    /// θE zeros outside every bracket of the window
    pub unbracketed: usize,
    pub sparsity_consistent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Compares the roots of `θv` with the zeros of `t ↦ θE_{½+it}` on the window.
///
/// A point of the discrete spectrum needs both to vanish, so only roots
/// within `tol` of a θE zero are candidates.
pub fn eigenvalue_candidates(
    line: &SpectralLine,
    roots: &[DiscreteRoot],
    theta: ThetaProvider,
    tol: f64,
) -> Result<SparsityReport> {
    let zs = line.window_zeros();
    let (t_first, t_last) = (zs[0].t, zs[zs.len() - 1].t);
    let theta_zeros = theta.line_zeros(0.0, line.t_max)?;
    let mut nearest = Vec::with_capacity(roots.len());
    let mut matches = Vec::new();
    for r in roots {
        let (d, z) = theta_zeros
            .iter()
            .map(|z| ((z - r.tau).abs(), *z))
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .unwrap_or((f64::INFINITY, f64::NAN));
        nearest.push(d);
        if d < tol {
            matches.push(Match {
                bracket: r.bracket,
                tau: r.tau,
                theta_zero: z,
                distance: d,
            });
        }
    }
    let mut histogram: Vec<Bin> = (-12..2)
        .map(|k| Bin {
            lo: 10f64.powi(k),
            hi: 10f64.powi(k + 1),
            count: 0,
        })
        .collect();
    for d in &nearest {
        if let Some(b) = histogram.iter_mut().find(|b| *d >= b.lo && *d < b.hi) {
            b.count += 1;
        }
    }
    let unbracketed = theta_zeros
        .iter()
        .filter(|z| **z <= t_first || **z >= t_last || zs.iter().any(|x| x.t == **z))
        .count();
    Ok(SparsityReport {
        tol,
        sparsity_consistent: matches.len() <= SPARSE_MATCHES,
        theta_zeros,
        nearest,
        matches,
        histogram,
        unbracketed,
    })
}

/// Pair-correlation histogram and nearest-neighbour statistics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCorrelation {
    pub n: usize,
    pub unfolded: Vec<f64>,
    pub bins: Vec<Bin>,
    /// `count / (n · bin_width)`: tends to 1 for uncorrelated points
    pub density: Vec<f64>,
    pub nn_spacings: Vec<f64>,
    pub nn_mean: f64,
    pub nn_cv: f64,
}

/// Unfolds sorted abscissas by `counting` (an integrated density), then
/// histograms all pairwise unfolded gaps up to `max_gap`.
pub fn pair_correlation<F>(ts: &[f64], counting: F, bin_width: f64, max_gap: f64) -> Result<PairCorrelation>
where
    F: Fn(f64) -> f64,
{
    if ts.len() < 30 {
        return Err(Error::InvalidArgument(format!(
            "need at least 30 points, got {}",
            ts.len()
        )));
    }
    if !(bin_width > 0.0 && max_gap > 0.0) {
        return Err(Error::InvalidArgument("bin width and max gap must be positive".into()));
    }
    let mut sorted = ts.to_vec();
    sorted.sort_by(f64::total_cmp);
    let unfolded: Vec<f64> = sorted.iter().map(|&t| counting(t)).collect();
    let n_bins = (max_gap / bin_width).ceil() as usize;
    let mut bins: Vec<Bin> = (0..n_bins)
        .map(|k| Bin {
            lo: k as f64 * bin_width,
            hi: (k + 1) as f64 * bin_width,
            count: 0,
        })
        .collect();
    for i in 0..unfolded.len() {
        for j in i + 1..unfolded.len() {
            let g = unfolded[j] - unfolded[i];
            if g > max_gap {
                break;
            }
            let k = (g / bin_width) as usize;
            if k < n_bins {
                bins[k].count += 1;
            }
        }
    }
    let n = unfolded.len();
    let density = bins.iter().map(|b| b.count as f64 / (n as f64 * bin_width)).collect();
    let nn_spacings: Vec<f64> = unfolded.windows(2).map(|w| w[1] - w[0]).collect();
    let (nn_mean, _, nn_cv) = moments(&nn_spacings);
    Ok(PairCorrelation {
        n,
        unfolded,
        bins,
        density,
        nn_spacings,
        nn_mean,
        nn_cv,
    })
}

/// Unfolding for the constant-term zeros at height `a`.
pub fn line_counting(a: f64) -> impl Fn(f64) -> f64 {
    move |t| count_predicted(a, t)
}
