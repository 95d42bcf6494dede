//! Exact symbolic computations in U(gl_n): the Casimir element, its scalar
//! on spherical principal series, and the Levi-block decomposition on gl_4.

pub mod poly;
pub mod uea;

pub use poly::{rat, Poly};
pub use uea::{Block, Gen, Monomial, PbwOrder, UeaElement};

use crate::error::{Error, Result};
use serde::Serialize;

/// The scalar by which the gl_4 Casimir acts at the split preset.
pub const CASIMIR_EIGENVALUE: &str = "4*s^2 + 4*sf^2 - 8*sf - 4*s";

/// Which end of a PBW monomial is taken to annihilate the spherical vector
/// when evaluating off-diagonal words to zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Normal order upper < Cartan < lower, then drop words with any E factor.
    #[default]
    UpperLeft,
    /// Normal order lower < Cartan < upper, then drop words with any E factor.
    LowerLeft,
}

/// Image of `x` under `H(i) ↦ params[i-1]`, off-diagonal words ↦ 0.
pub fn infinitesimal_character(x: &UeaElement, params: &[Poly], convention: Convention) -> Poly {
    let order = match convention {
        Convention::UpperLeft => PbwOrder::UpperFirst,
        Convention::LowerLeft => PbwOrder::LowerFirst,
    };
    x.with_order(order).evaluate_cartan(params)
}

/// Trace-form dual pairs `(X, X*)` of gl_n: `(H(i), H(i))` and `(E(i,j), E(j,i))`.
pub fn casimir_dual_pairs(n: u8) -> Vec<(Gen, Gen)> {
    let mut out = Vec::with_capacity((n as usize).pow(2));
    for i in 1..=n {
        for j in 1..=n {
            out.push((Gen::new(i, j), Gen::new(j, i)));
        }
    }
    out
}

/// `Σ H(i)² + Σ_{i≠j} E(i,j)E(j,i)`, normal ordered.
pub fn casimir(n: u8) -> UeaElement {
    assert!((1..=8).contains(&n), "unsupported rank {n}");
    let mut out = UeaElement::zero(n);
    for (x, y) in casimir_dual_pairs(n) {
        out = &out + &UeaElement::from_word(n, &[x, y], rat(1, 1));
    }
    out
}

/// Formal parameters `s1, …, sn`.
pub fn generic_params(n: u8) -> Vec<Poly> {
    (1..=n).map(|i| Poly::symbol(&format!("s{i}"))).collect()
}

/// `(s + sf, -s + sf, s - sf, -s - sf)`.
pub fn split_params() -> Vec<Poly> {
    let s = Poly::symbol("s");
    let f = Poly::symbol("sf");
    vec![&s + &f, &(-&s) + &f, &s - &f, &(-&s) - &f]
}

/// Named parameter presets: `generic` (any n), `section5` / `gl4-split` (n = 4).
pub fn preset(name: &str, n: u8) -> Result<Vec<Poly>> {
    match name {
        "generic" => Ok(generic_params(n)),
        "section5" | "gl4-split" if n == 4 => Ok(split_params()),
        "section5" | "gl4-split" => Err(Error::InvalidArgument(format!("preset {name} needs n = 4, got {n}"))),
        _ => Err(Error::InvalidArgument(format!("unknown preset {name}"))),
    }
}

fn half_square(p: &Poly, c: (i64, i64)) -> Poly {
    p.pow(2).scale(&rat(c.0, c.1))
}

/// The gl_4 block form of the scalar: the gl_2-block terms, the quarter
/// square of the central H(1,2,3,4) and the linear H-corrections of the
/// off-block pairs.
pub fn gl4_block_display(p: &[Poly]) -> Poly {
    let d = |i: usize, j: usize| &p[i] - &p[j];
    let mut out = &half_square(&d(0, 1), (1, 2)) - &d(0, 1);
    let h1234 = &(&p[0] + &p[1]) - &(&p[2] + &p[3]);
    out = &out + &half_square(&h1234, (1, 4));
    out = &out - &d(1, 2);
    out = &out + &half_square(&d(2, 3), (1, 2));
    out = &out - &d(2, 3);
    for (i, j) in [(0, 3), (0, 2), (1, 3)] {
        out = &out - &d(i, j);
    }
    out
}

/// The sl_4 form: `½(s2-s3)²` in place of the central square and the
/// opposite sign on the three long-root corrections.
pub fn sl4_block_display(p: &[Poly]) -> Poly {
    let d = |i: usize, j: usize| &p[i] - &p[j];
    let mut out = Poly::zero();
    for k in 0..3 {
        out = &out + &half_square(&d(k, k + 1), (1, 2));
        out = &out - &d(k, k + 1);
    }
    for (i, j) in [(0, 3), (0, 2), (1, 3)] {
        out = &out + &d(i, j);
    }
    out
}

/// Pieces of `Ω = Ω₁ + Ω₂ + Ω₃ + Ω₄` on gl_4.
#[derive(Clone, Debug)]
pub struct SplitCheck {
    pub omega1: UeaElement,
    pub omega2: UeaElement,
    pub omega3: UeaElement,
    /// Σ E(i,j)E(j,i) + E(j,i)E(i,j) over i ∈ {1,2}, j ∈ {3,4}
    pub omega4: UeaElement,
    /// `Ω - Ω₁ - Ω₂ - Ω₃`
    pub residual: UeaElement,
    /// `residual - Ω₄`
    pub central: UeaElement,
    /// every residual word with an off-diagonal factor has an off-block factor,
    /// and the rest of the residual is `¼(H1+H2+H3+H4)²`
    pub holds: bool,
    /// every residual word has an off-block factor
    pub strictly_off_block: bool,
}

fn is_off_block(g: Gen) -> bool {
    (g.i <= 2) != (g.j <= 2)
}

fn levi_block(offset: u8) -> UeaElement {
    let (a, b) = (offset + 1, offset + 2);
    let hab = UeaElement::h_pair(4, a, b);
    let mut out = hab.multiply(&hab).scale(&rat(1, 2));
    out = &out + &UeaElement::from_word(4, &[Gen::new(a, b), Gen::new(b, a)], rat(1, 1));
    &out + &UeaElement::from_word(4, &[Gen::new(b, a), Gen::new(a, b)], rat(1, 1))
}

pub fn casimir_split_check() -> SplitCheck {
    let omega = casimir(4);
    let omega1 = levi_block(0);
    let omega2 = levi_block(2);
    let h = UeaElement::h_1234();
    let omega3 = h.multiply(&h).scale(&rat(1, 4));
    let mut omega4 = UeaElement::zero(4);
    for i in 1..=2 {
        for j in 3..=4 {
            omega4 = &omega4 + &UeaElement::from_word(4, &[Gen::new(i, j), Gen::new(j, i)], rat(1, 1));
            omega4 = &omega4 + &UeaElement::from_word(4, &[Gen::new(j, i), Gen::new(i, j)], rat(1, 1));
        }
    }
    let residual = &(&(&omega - &omega1) - &omega2) - &omega3;
    let central = &residual - &omega4;

    let mut trace = UeaElement::zero(4);
    for i in 1..=4 {
        trace = &trace + &UeaElement::h(4, i);
    }
    let expected_central = trace.multiply(&trace).scale(&rat(1, 4));
    let words_ok = residual
        .terms()
        .filter(|(w, _)| w.iter().any(|g| !g.is_cartan()))
        .all(|(w, _)| w.iter().any(|&g| is_off_block(g)));
    let strictly_off_block = residual.terms().all(|(w, _)| w.iter().any(|&g| is_off_block(g)));
    SplitCheck {
        holds: words_ok && central == expected_central,
        strictly_off_block,
        omega1,
        omega2,
        omega3,
        omega4,
        residual,
        central,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitSummary {
    pub holds: bool,
    pub strictly_off_block: bool,
    pub residual_terms: usize,
    pub central_term: String,
    pub omega4_scalar: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CasimirReport {
    pub n: u8,
    pub preset: String,
    pub convention: Convention,
    pub scalar: String,
    pub matches_reference: bool,
    pub lower_left_scalar: String,
    pub dual_pairs: usize,
    pub central: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gl4_display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sl4_display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalue_difference: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_check: Option<SplitSummary>,
}

/// True if `Ω` commutes with every `E(i, j)`.
pub fn casimir_is_central(n: u8) -> bool {
    let omega = casimir(n);
    (1..=n).all(|i| (1..=n).all(|j| omega.commutator(&UeaElement::e(n, i, j)).is_zero()))
}

/// `λ(s, sf) - λ(w, sf) = 4(s(s-1) - w(w-1))` for a scalar in `s, sf`.
pub fn eigenvalue_difference_holds(lambda: &Poly) -> bool {
    let w = Poly::symbol("w");
    let s = Poly::symbol("s");
    let diff = lambda - &lambda.substitute("s", &w);
    let expect = (&(&s * &(&s - &Poly::int(1))) - &(&w * &(&w - &Poly::int(1)))).scale(&rat(4, 1));
    diff == expect
}

pub fn casimir_report(n: u8, preset_name: &str) -> Result<CasimirReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("n must be 2, 3 or 4, got {n}")));
    }
    let params = preset(preset_name, n)?;
    let omega = casimir(n);
    let lambda = infinitesimal_character(&omega, &params, Convention::UpperLeft);
    let lower = infinitesimal_character(&omega, &params, Convention::LowerLeft);
    let split_preset = n == 4 && preset_name != "generic";
    let (scalar, matches_reference) = match lambda.format_like(CASIMIR_EIGENVALUE) {
        Ok(s) if split_preset => (s, true),
        _ => (lambda.to_canonical_string(), false),
    };
    let mut report = CasimirReport {
        n,
        preset: preset_name.to_string(),
        convention: Convention::UpperLeft,
        scalar,
        matches_reference,
        lower_left_scalar: lower.to_canonical_string(),
        dual_pairs: casimir_dual_pairs(n).len(),
        central: casimir_is_central(n),
        gl4_display: None,
        sl4_display: None,
        eigenvalue_difference: None,
        split_check: None,
    };
    if n == 4 {
        report.gl4_display = Some(gl4_block_display(&params).to_canonical_string());
        report.sl4_display = Some(sl4_block_display(&params).to_canonical_string());
        let split = casimir_split_check();
        report.split_check = Some(SplitSummary {
            holds: split.holds,
            strictly_off_block: split.strictly_off_block,
            residual_terms: split.residual.len(),
            central_term: infinitesimal_character(&split.central, &params, Convention::UpperLeft).to_canonical_string(),
            omega4_scalar: infinitesimal_character(&split.omega4, &params, Convention::UpperLeft).to_canonical_string(),
        });
        if split_preset {
            report.eigenvalue_difference = Some(eigenvalue_difference_holds(&lambda));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn gl2_casimir_unrolled() {
        let omega = casimir(2);
        let mut expect = UeaElement::zero(2);
        for w in [
            vec![Gen::new(1, 1), Gen::new(1, 1)],
            vec![Gen::new(2, 2), Gen::new(2, 2)],
            vec![Gen::new(1, 2), Gen::new(2, 1)],
            vec![Gen::new(2, 1), Gen::new(1, 2)],
        ] {
            expect = &expect + &UeaElement::from_word(2, &w, rat(1, 1));
        }
        assert_eq!(omega, expect);
        // H(1)² + H(2)² + 2 E(2,1)E(1,2) + H(1) - H(2)
        assert_eq!(omega.len(), 5);
        assert_eq!(omega.coefficient(&[Gen::new(2, 1), Gen::new(1, 2)]), rat(2, 1));
        assert_eq!(casimir_dual_pairs(4).len(), 16);
    }

    #[test]
    fn gl2_character_block_form() {
        // worksheet: Ω = H1² + H2² + 2 E12 E21 - (H1 - H2) with upper factors
        // moved left; dropping E12 E21 leaves s1² + s2² - (s1 - s2)
        let chi = infinitesimal_character(&casimir(2), &generic_params(2), Convention::UpperLeft);
        assert_eq!(chi, p("s1^2 + s2^2 - s1 + s2"));
        let block = p("1/2*s1^2 - s1*s2 + 1/2*s2^2 - s1 + s2 + 1/2*s1^2 + s1*s2 + 1/2*s2^2");
        assert_eq!(chi, block);
        let lower = infinitesimal_character(&casimir(2), &generic_params(2), Convention::LowerLeft);
        assert_eq!(lower, p("s1^2 + s2^2 + s1 - s2"));
    }

    #[test]
    fn gl4_scalar_at_split_preset() {
        let lambda = infinitesimal_character(&casimir(4), &split_params(), Convention::UpperLeft);
        assert_eq!(lambda.format_like(CASIMIR_EIGENVALUE).unwrap(), CASIMIR_EIGENVALUE);
        assert!(eigenvalue_difference_holds(&lambda));
        assert!(lambda.degree() <= 2);
        let lower = infinitesimal_character(&casimir(4), &split_params(), Convention::LowerLeft);
        assert_eq!(lower, p("4*s^2 + 4*sf^2 + 4*s + 8*sf"));
    }

    #[test]
    fn gl4_character_generic() {
        // Σ s_i² - Σ_{i<j} (s_i - s_j)
        let chi = infinitesimal_character(&casimir(4), &generic_params(4), Convention::UpperLeft);
        assert_eq!(chi, p("s1^2 + s2^2 + s3^2 + s4^2 - 3*s1 - s2 + s3 + 3*s4"));
    }

    #[test]
    fn block_displays() {
        let gl4 = gl4_block_display(&split_params());
        assert_eq!(gl4, p(CASIMIR_EIGENVALUE));
        let sl4 = sl4_block_display(&split_params());
        assert_eq!(sl4, p("6*s^2 - 4*s*sf + 2*sf^2 + 4*sf"));
        // generically the block form differs from the character by the trace square
        let g = generic_params(4);
        let chi = infinitesimal_character(&casimir(4), &g, Convention::UpperLeft);
        let trace = &(&g[0] + &g[1]) + &(&g[2] + &g[3]);
        assert_eq!(&chi - &gl4_block_display(&g), trace.pow(2).scale(&rat(1, 4)));
    }

    #[test]
    fn centrality() {
        for n in 2..=4 {
            assert!(casimir_is_central(n), "n = {n}");
        }
        let x = UeaElement::e(3, 1, 2).multiply(&UeaElement::e(3, 2, 3));
        assert!(!x.commutator(&UeaElement::e(3, 3, 1)).is_zero());
    }

    #[test]
    fn split_check() {
        let s = casimir_split_check();
        assert!(s.holds);
        assert!(!s.strictly_off_block);
        let params = split_params();
        let chi = |x: &UeaElement| infinitesimal_character(x, &params, Convention::UpperLeft);
        assert_eq!(chi(&s.omega3), p("4*sf^2"));
        // the trace vanishes at the split preset
        assert!(chi(&s.central).is_zero());
        let g = generic_params(4);
        assert_eq!(
            infinitesimal_character(&s.omega1, &g, Convention::UpperLeft),
            p("1/2*s1^2 - s1*s2 + 1/2*s2^2 - s1 + s2")
        );
        let total = &(&(&chi(&s.omega1) + &chi(&s.omega2)) + &chi(&s.omega3)) + &chi(&s.omega4);
        assert_eq!(total, p(CASIMIR_EIGENVALUE));
    }

    #[test]
    fn report() {
        let r = casimir_report(4, "section5").unwrap();
        assert_eq!(r.scalar, CASIMIR_EIGENVALUE);
        assert!(r.matches_reference && r.central);
        assert_eq!(r.eigenvalue_difference, Some(true));
        assert!(r.split_check.as_ref().unwrap().holds);
        let g = casimir_report(3, "generic").unwrap();
        assert!(!g.matches_reference);
        assert!(casimir_report(5, "generic").is_err());
        assert!(casimir_report(2, "section5").is_err());
    }
}
