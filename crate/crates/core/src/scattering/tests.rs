use super::*;
use proptest::prelude::*;
use std::sync::OnceLock;

fn desk() -> &'static ScatteringDatum {
    static D: OnceLock<ScatteringDatum> = OnceLock::new();
    D.get_or_init(|| ScatteringDatum::desk(100.0).unwrap())
}

fn zeros3() -> &'static [ConstantTermZero] {
    static Z: OnceLock<Vec<ConstantTermZero>> = OnceLock::new();
    Z.get_or_init(|| desk().zeros(3.0, 100.0).unwrap())
}

#[test]
fn unitarity_on_the_line() {
    let d = desk();
    let mut worst: f64 = 0.0;
    let mut t = 0.1;
    while t <= 100.0 {
        worst = worst.max((d.c_line(t).unwrap().norm() - 1.0).abs());
        // the general ratio, not the conjugate shortcut
        let g = c_generic(d.spec(), Complex64::new(0.5, t)).unwrap();
        worst = worst.max((g.norm() - 1.0).abs());
        t += 0.37;
    }
    assert!(worst < 1e-9, "{worst:e}");
    assert!((d.c(Complex64::new(0.5, 5.0)).unwrap().norm() - 1.0).abs() < 1e-10);
}

#[test]
fn functional_equation_of_c() {
    let d = desk();
    let s = Complex64::new(0.7, 3.0);
    let prod = d.c(s).unwrap() * d.c(1.0 - s).unwrap();
    assert!((prod - 1.0).norm() < 1e-9);
}

#[test]
fn limit_at_half_is_minus_one() {
    // ξ has residues +1 at s = 1 and -1 at s = 0, so c(½ + ε) → -1
    let v = desk().c(Complex64::new(0.5, 0.0)).unwrap();
    assert!((v + 1.0).norm() < 1e-5, "{v}");
    let near = desk().c(Complex64::new(0.5 + 1e-6, 0.0)).unwrap();
    assert!((near + 1.0).norm() < 1e-5);
}

#[test]
fn phase_reproduces_c() {
    let d = desk();
    let t = 10.0;
    let diff = Complex64::from_polar(1.0, d.phase(t).unwrap()) - d.c_line(t).unwrap();
    assert!(diff.norm() < 1e-8);
}

#[test]
fn phase_is_continuous_on_dense_scan() {
    let d = desk();
    let mut prev = d.phase(1.0).unwrap();
    let mut worst: f64 = 0.0;
    let mut t: f64 = 1.0;
    while t < 100.0 {
        t += 0.003;
        let p = d.phase(t.min(100.0)).unwrap();
        worst = worst.max((p - prev).abs());
        prev = p;
    }
    assert!(worst < PI / 2.0, "{worst}");
    let table: Vec<(f64, f64)> = d.phase_table().collect();
    for w in table.windows(2) {
        assert!((w[1].1 - w[0].1).abs() < PI / 2.0);
    }
}

#[test]
fn phase_derivative_matches_finite_difference_of_phase() {
    let d = desk();
    let h = 1e-3;
    let fd = (d.phase(20.0 + h).unwrap() - d.phase(20.0 - h).unwrap()) / (2.0 * h);
    let v = d.phase_derivative(20.0).unwrap();
    assert!((fd - v).abs() < 1e-5, "{fd} vs {v}");
}

#[test]
fn phase_derivative_precision_oracle() {
    let d = desk();
    // the difference quotient divides the ~1e-13 absolute error of the
    // double log-gamma (|Im log Γ| ~ t log t) by 2h = 2e-4
    for t in [0.5, 12.3, 77.7] {
        let a = d.phase_derivative(t).unwrap();
        let b = d.phase_derivative_extended(t).unwrap();
        assert!((a - b).abs() < 2e-8, "{a} vs {b}");
    }
}

#[test]
fn constant_term_vanishes_at_zeros() {
    let d = desk();
    let a = 3.0;
    for z in zeros3() {
        let v = d.constant_term(a, Complex64::new(0.5, z.t)).unwrap();
        // independent direct evaluation through the general ratio
        let s = Complex64::new(0.5, z.t);
        let direct = (s * a.ln()).exp() + c_generic(d.spec(), s).unwrap() * ((1.0 - s) * a.ln()).exp();
        assert!(v.norm() / a.sqrt() < 1e-7, "t = {}: {}", z.t, v.norm());
        assert!(direct.norm() / a.sqrt() < 1e-7);
        assert!(z.residual.abs() < 1e-10);
    }
}

#[test]
fn constant_term_bound_and_symmetry() {
    let d = desk();
    for t in [0.3, 4.0, 33.3, 90.0] {
        let s = Complex64::new(0.5, t);
        let v = d.constant_term(2.5, s).unwrap();
        assert!(v.norm() <= 2.0 * 2.5f64.sqrt() + 1e-12);
        let w = d.constant_term(2.5, s.conj()).unwrap();
        assert!((w - v.conj()).norm() < 1e-12);
    }
    let off = Complex64::new(0.8, 7.0);
    let v = d.constant_term(2.5, off).unwrap();
    assert!((d.constant_term(2.5, off.conj()).unwrap() - v.conj()).norm() < 1e-12);
}

#[test]
fn zeros_are_increasing_and_counted_by_winding() {
    let z = zeros3();
    for (i, w) in z.windows(2).enumerate() {
        assert!(w[1].t > w[0].t);
        assert_eq!(w[1].branch, w[0].branch + 1);
        assert_eq!(w[0].index, i + 1);
    }
    let d = desk();
    let winding = d.winding_count(3.0, 100.0).unwrap();
    assert_eq!(z.len() as i64, winding);
    let z0 = d.total_phase(3.0, T_MIN).unwrap();
    let z1 = d.total_phase(3.0, 100.0).unwrap();
    let est = ((z1 - z0) / TAU).floor() as i64;
    assert!((z.len() as i64 - est).abs() <= 1);
}

#[test]
fn zeros_stable_under_step_halving() {
    let fine = ScatteringDatum::new(LFunctionSpec::riemann_zeta(), 40.0, DEFAULT_STEP / 2.0).unwrap();
    let a = fine.zeros(3.0, 40.0).unwrap();
    let b: Vec<_> = zeros3().iter().filter(|z| z.t <= 40.0).collect();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x.t - y.t).abs() < 1e-8);
        assert_eq!(x.branch, y.branch);
    }
}

#[test]
fn total_phase_increases_away_from_origin() {
    // Z′ becomes positive once t ≳ 0.5 for a = 3; near t = 0 it is negative
    let d = desk();
    let mut t = 1.0;
    while t <= 100.0 {
        assert!(d.total_phase_derivative(3.0, t).unwrap() > 0.0, "t = {t}");
        t += 0.25;
    }
    assert!(d.total_phase_derivative(3.0, 0.05).unwrap() < 0.0);
}

#[test]
fn small_height_dip_is_not_a_violation() {
    for a in [1.2, 1.5, 2.0] {
        let z = desk().zeros(a, 20.0).unwrap();
        assert!(!z.is_empty());
        assert_eq!(z.len() as i64, desk().winding_count(a, 20.0).unwrap());
    }
}

#[test]
fn count_matches_main_term() {
    for a in [2.0, 3.0, 10.0] {
        let n = desk().zeros(a, 100.0).unwrap().len();
        assert!(count_deviation(n, a, 100.0) <= 2.0 * 100f64.ln());
    }
    assert!(count_predicted(3.0, 200.0) > count_predicted(3.0, 100.0));
}

#[test]
fn density_matches_local_counts() {
    let z = zeros3();
    for centre in [40.0, 60.0, 90.0] {
        let n = z.iter().filter(|x| x.t > centre - 5.0 && x.t <= centre + 5.0).count() as f64;
        let p = 10.0 * density_predicted(3.0, centre);
        assert!((n - p).abs() / p < 0.1, "centre {centre}: {n} vs {p}");
    }
}

#[test]
fn gap_report() {
    let d = desk();
    let sel: Vec<ConstantTermZero> = zeros3().iter().copied().filter(|z| z.t >= 50.0).collect();
    let g = gaps(d, 3.0, &sel).unwrap();
    assert_eq!(g.raw.len(), sel.len() - 1);
    assert!((g.mean - 1.0).abs() < 0.1, "mean {}", g.mean);
    // window mean of raw gaps against 2π over the window mean of Z′
    let inner: Vec<f64> = sel.iter().filter(|z| z.t > 70.0 && z.t < 80.0).map(|z| z.t).collect();
    let mean_gap = (inner[inner.len() - 1] - inner[0]) / (inner.len() - 1) as f64;
    let zbar = (d.total_phase(3.0, inner[inner.len() - 1]).unwrap() - d.total_phase(3.0, inner[0]).unwrap())
        / (inner[inner.len() - 1] - inner[0]);
    assert!((mean_gap - TAU / zbar).abs() / mean_gap < 0.1);
    assert!(gaps(d, 3.0, &sel[..5]).is_err());
}

#[test]
fn argument_checks() {
    assert!(ScatteringDatum::desk(400.0).is_err());
    assert!(desk().zeros(1.0, 10.0).is_err());
    assert!(desk().phase(200.0).is_err());
    assert!(desk().zeros(3.0, 150.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zero_completeness_on_subintervals(t1 in 1.0f64..90.0, len in 0.5f64..10.0) {
        let t2 = (t1 + len).min(100.0);
        let d = desk();
        let inside = zeros3().iter().filter(|z| z.t > t1 && z.t <= t2).count() as f64;
        let winding = (d.total_phase(3.0, t2).unwrap() - d.total_phase(3.0, t1).unwrap()) / TAU;
        prop_assert!((inside - winding).abs() < 1.0);
    }

    #[test]
    fn unitarity_random(t in 0.01f64..100.0) {
        prop_assert!((desk().c_line(t).unwrap().norm() - 1.0).abs() < 1e-12);
    }
}
