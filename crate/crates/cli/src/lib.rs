//! Command-line front end: argument parsing, dispatch, and CSV/JSON output.
//!
//! `specfun --l-file PATH --function l|completed` evaluates a user-supplied
//! L-function. The file is a `key = value` header followed by `n,a(n)` rows;
//! `#` starts a comment:
//!
//! ```text
//! name = my-l
//! degree = 1
//! conductor = 0.5641895835477563
//! gamma = 0.5 0 0        # scale, Re shift, Im shift; one line per factor
//! pole = 1 0             # Re, Im; one line per pole
//! periodic = false       # rows are one period of a(n) when true
//! 1,1
//! 2,0.7071
//! ```
//!
//! The completed function is `Q^s · Π Γ(scale·s + shift) · L(s)`. Missing
//! `n` have `a(n) = 0`. Periodic rows whose period sums to zero are
//! continued analytically; otherwise the truncated sum is used as is.
//!
//! The zero cache directory is read from `THETA_SPECTRUM_CACHE`.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use theta_spectrum::analytic::{self, DoubleDouble, LFunctionSpec, Precision, Real};
use theta_spectrum::io::{cache_dir, float, ZeroCache};
use theta_spectrum::maass_selberg::{residue_norm_check, MSContext};
use theta_spectrum::scattering::{
    count_deviation, count_predicted, gaps, ConstantTermZero, ScatteringDatum, DEFAULT_STEP, MAX_HEIGHT, T_MIN,
};
use theta_spectrum::spectrum::{
    build_line, discrete_roots, eigenvalue_candidates, line_counting, pair_correlation, DiscreteRoot, LambdaModel,
    LineOptions, SpectralLine, ThetaProvider, DEFAULT_MATCH_TOL, DEFAULT_TAIL_TERMS,
};
use theta_spectrum::{intertwine, liealg};

/// Exit status for a falsified mathematical invariant.
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_USAGE: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "theta-spectrum",
    version,
    about = "Scattering zeros, truncated norms and interlacing spectra"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate ζ, L(s, χ₋₄), ζ_Q(i), or a completed L-function at a point
    Specfun(SpecfunArgs),
    /// Zeros of the truncated constant term on the critical line
    ScatteringZeros(LineArgs),
    /// Zero count against the winding number and the main term
    Count(LineArgs),
    /// Normalized nearest-neighbour gaps of the zeros
    Gaps(GapArgs),
    /// Casimir scalar and Levi-block split check on gl_n
    Casimir(CasimirArgs),
    /// Compose simple-reflection intertwining operators
    Intertwine(IntertwineArgs),
    /// Truncated Eisenstein norm against the four-term formula
    MsNorm(MsNormArgs),
    /// Maass–Selberg relations
    Ms {
        #[command(subcommand)]
        op: MsOp,
    },
    /// Spectral weights and the roots of θv on each bracket
    SpectrumSolve(SpectrumArgs),
    /// Interlacing verdict with a tail-doubling comparison
    Interlace(SpectrumArgs),
    /// Pair-correlation histograms of the zeros and of the θE zeros
    Correlate(CorrelateArgs),
}

#[derive(Debug, Subcommand)]
pub enum MsOp {
    /// Same as `ms-norm`
    Norm(MsNormArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Double,
    Extended,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::Extended => Precision::Extended,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Omit the timestamp comment line from CSV output
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SpecfunArgs {
    /// zeta, chi4, dedekind-gaussian, xi (completed ζ); with --l-file, l or completed
    #[arg(long, default_value = "zeta")]
    pub function: String,
    /// Coefficient file for a user-supplied L-function
    #[arg(long)]
    pub l_file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub im: f64,
    #[arg(long, value_enum, default_value = "double")]
    pub precision: PrecisionArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LineArgs {
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long = "t-max", default_value_t = 100.0)]
    pub t_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GapArgs {
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long = "t-min", default_value_t = 50.0)]
    pub t_min: f64,
    #[arg(long = "t-max", default_value_t = 100.0)]
    pub t_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CasimirArgs {
    #[arg(long, default_value_t = 4)]
    pub n: u8,
    /// generic, or section5 / gl4-split for (s+sf, -s+sf, s-sf, -s-sf)
    #[arg(long, default_value = "generic")]
    pub preset: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct IntertwineArgs {
    /// Reflection indices, applied left to right
    #[arg(long, default_value = "2,1,3,2")]
    pub word: String,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// rankin-selberg or section5 / gl4-split
    #[arg(long, default_value = "rankin-selberg")]
    pub preset: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MsNormArgs {
    /// Truncation height
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long = "t-max", default_value_t = 60.0)]
    pub t_max: f64,
    /// delta-at-i, zeta-ratio or constant
    #[arg(long, default_value = "delta-at-i")]
    pub theta: String,
    #[arg(long, value_enum, default_value = "double")]
    pub precision: PrecisionArg,
    /// Zeros above the window summed exactly before the tail model
    #[arg(long = "tail-terms", default_value_t = DEFAULT_TAIL_TERMS)]
    pub tail_terms: usize,
    /// Use the gl4 eigenvalue 4s² + 4sf² - 8sf - 4s with this sf
    #[arg(long, allow_hyphen_values = true)]
    pub gl4_sf: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_MATCH_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CorrelateArgs {
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long = "t-min", default_value_t = 50.0)]
    pub t_min: f64,
    #[arg(long = "t-max", default_value_t = 100.0)]
    pub t_max: f64,
    #[arg(long, default_value = "delta-at-i")]
    pub theta: String,
    #[arg(long = "bin-width", default_value_t = 0.1)]
    pub bin_width: f64,
    #[arg(long = "max-gap", default_value_t = 3.0)]
    pub max_gap: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// A computed result that contradicts an invariant the pipeline exhibits.
#[derive(Debug)]
pub struct Falsified(pub String);

impl std::fmt::Display for Falsified {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant falsified: {}", self.0)
    }
}

impl std::error::Error for Falsified {}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    run(&config)
}

pub fn run(config: &RunConfig) -> i32 {
    match dispatch(&config.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<Falsified>().is_some() {
        return EXIT_INVARIANT;
    }
    match e.downcast_ref::<theta_spectrum::Error>() {
        Some(err) if err.is_invariant_violation() => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cmd: &Command) -> anyhow::Result<()> {
    match cmd {
        Command::Specfun(a) => specfun(a),
        Command::ScatteringZeros(a) => scattering_zeros(a),
        Command::Count(a) => count(a),
        Command::Gaps(a) => gap_stats(a),
        Command::Casimir(a) => casimir(a),
        Command::Intertwine(a) => intertwine_cmd(a),
        Command::MsNorm(a) | Command::Ms { op: MsOp::Norm(a) } => ms_norm(a),
        Command::SpectrumSolve(a) => spectrum_solve(a),
        Command::Interlace(a) => interlace(a),
        Command::Correlate(a) => correlate(a),
    }
}

fn timestamp_line(out: &OutputArgs) -> String {
    if out.no_timestamp {
        return String::new();
    }
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("# generated at unix time {secs}\n")
}

fn emit(out: &OutputArgs, body: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: &OutputArgs, value: &T) -> anyhow::Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    emit(out, &s)
}

fn emit_csv(out: &OutputArgs, csv: &str) -> anyhow::Result<()> {
    let mut s = timestamp_line(out);
    s.push_str(csv);
    emit(out, &s)
}

fn check_a(a: f64) -> anyhow::Result<()> {
    if !(a > 1.0 && a.is_finite()) {
        bail!(theta_spectrum::Error::InvalidArgument(format!(
            "--a must exceed 1, got {a}"
        )));
    }
    Ok(())
}

fn check_t_max(t: f64) -> anyhow::Result<()> {
    if !(t > T_MIN && t <= MAX_HEIGHT) {
        bail!(theta_spectrum::Error::InvalidArgument(format!(
            "--t-max must lie in ({T_MIN}, {MAX_HEIGHT}], got {t}"
        )));
    }
    Ok(())
}

fn fmt_complex(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
struct SpecfunOut {
    function: String,
    precision: Precision,
    s: [f64; 2],
    value: [f64; 2],
}

fn specfun(args: &SpecfunArgs) -> anyhow::Result<()> {
    let precision: Precision = args.precision.into();
    let user = match &args.l_file {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let spec = LFunctionSpec::parse(&text)?;
            spec.validate()?;
            Some(spec)
        }
        None => None,
    };
    let eval = |s: Complex64| -> theta_spectrum::Result<Complex64> {
        if let Some(spec) = &user {
            return match args.function.as_str() {
                "l" => spec.l_value(s),
                "completed" => spec.completed(s),
                f => Err(theta_spectrum::Error::InvalidArgument(format!(
                    "with --l-file, --function is l or completed, got {f}"
                ))),
            };
        }
        match precision {
            Precision::Double => eval_special_in(&args.function, s),
            Precision::Extended => {
                let sd = num_complex::Complex::new(DoubleDouble::from_f64(s.re), DoubleDouble::from_f64(s.im));
                eval_special_in(&args.function, sd).map(|v| Complex64::new(v.re.to_f64(), v.im.to_f64()))
            }
        }
    };
    let s = Complex64::new(args.re, args.im);
    let value = eval(s)?;
    let out = SpecfunOut {
        function: args.function.clone(),
        precision,
        s: fmt_complex(s),
        value: fmt_complex(value),
    };
    match args.out.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&args.out, &out),
        Format::Csv => emit_csv(
            &args.out,
            &format!(
                "function,re,im,value_re,value_im\n{},{},{},{},{}\n",
                out.function, s.re, s.im, value.re, value.im
            ),
        ),
    }
}

fn eval_special_in<R: analytic::Real>(
    name: &str,
    s: num_complex::Complex<R>,
) -> theta_spectrum::Result<num_complex::Complex<R>> {
    match name {
        "zeta" => analytic::zeta(s),
        "chi4" => analytic::dirichlet_l_chi4(s),
        "dedekind-gaussian" => analytic::dedekind_gaussian(s),
        "xi" => LFunctionSpec::riemann_zeta().completed(s),
        _ => Err(theta_spectrum::Error::InvalidArgument(format!(
            "unknown function {name} (expected zeta, chi4, dedekind-gaussian, xi)"
        ))),
    }
}

/// Zeros for `(a, t_max)`, through the cache directory when one is configured.
fn load_zeros(a: f64, t_max: f64) -> anyhow::Result<(ScatteringDatum, Vec<ConstantTermZero>)> {
    check_a(a)?;
    check_t_max(t_max)?;
    let datum = ScatteringDatum::desk(t_max)?;
    if let Some(dir) = cache_dir() {
        let path = dir.join(ZeroCache::file_name(a, t_max, DEFAULT_STEP));
        if path.exists() {
            let cache = ZeroCache::read(&path)?;
            if cache.a == a && cache.t_max == t_max && cache.step == DEFAULT_STEP {
                return Ok((datum, cache.zeros));
            }
        }
        let zeros = datum.zeros(a, t_max)?;
        std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        zero_cache(a, t_max, &zeros).write(&path)?;
        return Ok((datum, zeros));
    }
    let zeros = datum.zeros(a, t_max)?;
    Ok((datum, zeros))
}

fn zero_cache(a: f64, t_max: f64, zeros: &[ConstantTermZero]) -> ZeroCache {
    ZeroCache {
        a,
        t_min: T_MIN,
        t_max,
        step: DEFAULT_STEP,
        zeros: zeros.to_vec(),
    }
}

fn scattering_zeros(args: &LineArgs) -> anyhow::Result<()> {
    let (_, zeros) = load_zeros(args.a, args.t_max)?;
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => emit_csv(&args.out, &zero_cache(args.a, args.t_max, &zeros).to_csv()),
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                a: f64,
                t_max: f64,
                zeros: &'a [ConstantTermZero],
            }
            emit_json(
                &args.out,
                &Out {
                    a: args.a,
                    t_max: args.t_max,
                    zeros: &zeros,
                },
            )
        }
    }
}

#[derive(Serialize)]
struct CountOut {
    a: f64,
    t_max: f64,
    observed: usize,
    winding: i64,
    predicted: f64,
    deviation: f64,
    bound: f64,
    within_bound: bool,
}

fn count(args: &LineArgs) -> anyhow::Result<()> {
    let (datum, zeros) = load_zeros(args.a, args.t_max)?;
    let winding = datum.winding_count(args.a, args.t_max)?;
    let out = CountOut {
        a: args.a,
        t_max: args.t_max,
        observed: zeros.len(),
        winding,
        predicted: count_predicted(args.a, args.t_max),
        deviation: count_deviation(zeros.len(), args.a, args.t_max),
        bound: 2.0 * args.t_max.ln(),
        within_bound: count_deviation(zeros.len(), args.a, args.t_max) <= 2.0 * args.t_max.ln(),
    };
    match args.out.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&args.out, &out)?,
        Format::Csv => emit_csv(
            &args.out,
            &format!(
                "a,t_max,observed,winding,predicted,deviation\n{},{},{},{},{},{}\n",
                out.a, out.t_max, out.observed, out.winding, out.predicted, out.deviation
            ),
        )?,
    }
    if out.observed as i64 != winding {
        return Err(Falsified(format!("{} zeros found but winding number is {winding}", out.observed)).into());
    }
    Ok(())
}

fn gap_stats(args: &GapArgs) -> anyhow::Result<()> {
    let (datum, zeros) = load_zeros(args.a, args.t_max)?;
    let sel: Vec<ConstantTermZero> = zeros.into_iter().filter(|z| z.t >= args.t_min).collect();
    let rep = gaps(&datum, args.a, &sel)?;
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Json => emit_json(&args.out, &rep),
        Format::Csv => {
            let mut s = String::from("j,t_j,raw_gap,normalized_gap\n");
            for (k, z) in sel.iter().take(rep.raw.len()).enumerate() {
                writeln!(s, "{},{},{},{}", z.index, z.t, rep.raw[k], rep.normalized[k])?;
            }
            emit_csv(&args.out, &s)
        }
    }
}

fn casimir(args: &CasimirArgs) -> anyhow::Result<()> {
    let rep = liealg::casimir_report(args.n, &args.preset)?;
    emit_json(&args.out, &rep)?;
    if let Some(split) = &rep.split_check {
        if !split.holds {
            return Err(Falsified("Casimir split check".into()).into());
        }
    }
    if !rep.central {
        return Err(Falsified("Casimir is not central".into()).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct IntertwineOut {
    word: Vec<usize>,
    preset: String,
    steps: Vec<intertwine::Step>,
    end: intertwine::ParamTuple,
    factors: Vec<String>,
    specialized_end: intertwine::ParamTuple,
    specialized_factors: Vec<String>,
    /// present for the Rankin–Selberg word and preset
    #[serde(skip_serializing_if = "Option::is_none")]
    specialization: Option<intertwine::Specialization>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
    braid: intertwine::BraidReport,
}

fn intertwine_cmd(args: &IntertwineArgs) -> anyhow::Result<()> {
    let word = intertwine::parse_word(&args.word)?;
    let res = intertwine::compose_word(&word, &intertwine::ParamTuple::generic(args.n))?;
    let map = intertwine::preset(&args.preset)?;
    let checked = word == intertwine::RANKIN_SELBERG_WORD && args.n == 4 && args.preset == "rankin-selberg";
    let specialization = if checked {
        Some(intertwine::specialize_rankin_selberg(&res)?)
    } else {
        None
    };
    let out = IntertwineOut {
        word: word.clone(),
        preset: args.preset.clone(),
        factors: res.factors.0.iter().map(|f| f.to_string()).collect(),
        specialized_end: res.end.substitute(&map),
        specialized_factors: res.factors.substitute(&map).0.iter().map(|f| f.to_string()).collect(),
        end: res.end.clone(),
        steps: res.steps,
        verdict: specialization.as_ref().map(|s| if s.pass { "pass" } else { "fail" }),
        specialization,
        braid: intertwine::braid_report(),
    };
    match args.out.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&args.out, &out),
        Format::Csv => {
            let mut s = String::from("step,reflection,tuple,factor\n");
            for (k, st) in out.steps.iter().enumerate() {
                writeln!(s, "{},{},\"{}\",\"{}\"", k + 1, st.reflection, st.after, st.factor)?;
            }
            emit_csv(&args.out, &s)
        }
    }
}

#[derive(Serialize)]
struct MsOut {
    a: f64,
    t: f64,
    data: &'static str,
    closed_form: f64,
    extrapolated: f64,
    residual: f64,
    residue_at_one: f64,
}

fn ms_norm(args: &MsNormArgs) -> anyhow::Result<()> {
    check_a(args.a)?;
    if !(args.t > 0.0 && args.t + 1e-2 < MAX_HEIGHT) {
        bail!(theta_spectrum::Error::InvalidArgument(format!(
            "--t must lie in (0, {MAX_HEIGHT}), got {}",
            args.t
        )));
    }
    let datum = ScatteringDatum::desk((args.t + 1.0).min(MAX_HEIGHT))?;
    let ctx = MSContext::new(args.a, &datum)?;
    let check = ctx.norm_check(args.t)?;
    let residue = residue_norm_check(&datum)?;
    let out = MsOut {
        a: args.a,
        t: args.t,
        data: "all cuspidal-data inner products = 1",
        closed_form: check.closed_form,
        extrapolated: check.extrapolated,
        residual: check.residual,
        residue_at_one: residue.residue,
    };
    match args.out.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&args.out, &out)?,
        Format::Csv => emit_csv(
            &args.out,
            &format!(
                "a,t,closed_form,extrapolated,residual\n{},{},{},{},{}\n",
                out.a, out.t, out.closed_form, out.extrapolated, out.residual
            ),
        )?,
    }
    if !(check.closed_form > 0.0) {
        return Err(Falsified(format!("truncated norm {} is not positive", check.closed_form)).into());
    }
    Ok(())
}

fn line_options(args: &SpectrumArgs) -> LineOptions {
    LineOptions {
        tail_terms: args.tail_terms,
        precision: args.precision.into(),
        model: match args.gl4_sf {
            Some(sf) => LambdaModel::Gl4 { sf },
            None => LambdaModel::Gl2,
        },
    }
}

fn solve(args: &SpectrumArgs, tail_terms: usize) -> anyhow::Result<(ThetaProvider, SpectralLine, Vec<DiscreteRoot>)> {
    check_a(args.a)?;
    check_t_max(args.t_max)?;
    let theta = ThetaProvider::by_name(&args.theta)?;
    let opts = LineOptions {
        tail_terms,
        ..line_options(args)
    };
    let line = build_line(args.a, args.t_max, theta, &opts)?;
    let roots = discrete_roots(&line)?;
    verify_roots(&line, &roots)?;
    Ok((theta, line, roots))
}

fn verify_roots(line: &SpectralLine, roots: &[DiscreteRoot]) -> anyhow::Result<()> {
    if roots.len() + 1 != line.window_len {
        return Err(Falsified(format!("{} roots for {} brackets", roots.len(), line.window_len - 1)).into());
    }
    for r in roots {
        if !(r.lo < r.tau && r.tau < r.hi) {
            return Err(Falsified(format!("root {} outside its bracket", r.tau)).into());
        }
        if !(r.deriv_cert > 0.0) {
            return Err(Falsified(format!("derivative certificate {} at root {}", r.deriv_cert, r.tau)).into());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SpectrumSummary {
    a: f64,
    t_max: f64,
    theta: &'static str,
    adjustments: usize,
    n_zeros: usize,
    n_roots: usize,
    matches: usize,
    sparsity_consistent: bool,
    cv_line: Option<f64>,
    cv_theta_zeros: Option<f64>,
}

fn nn_cv<F: Fn(f64) -> f64>(ts: &[f64], counting: F) -> Option<f64> {
    pair_correlation(ts, counting, 0.1, 3.0).ok().map(|p| p.nn_cv)
}

fn spectrum_solve(args: &SpectrumArgs) -> anyhow::Result<()> {
    let (theta, line, roots) = solve(args, args.tail_terms)?;
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("j,t_j,weight,norm_sq,tau_j,residual,deriv_cert\n");
            for (j, z) in line.window_zeros().iter().enumerate() {
                write!(
                    s,
                    "{},{},{},{}",
                    z.index,
                    float(z.t),
                    float(line.weights[j]),
                    float(line.norms[j])
                )?;
                match roots.get(j) {
                    Some(r) => writeln!(s, ",{},{},{}", float(r.tau), float(r.residual), float(r.deriv_cert))?,
                    None => writeln!(s, ",,,")?,
                }
            }
            emit_csv(&args.out, &s)
        }
        Format::Json => {
            let rep = eigenvalue_candidates(&line, &roots, theta, args.tol)?;
            let ts: Vec<f64> = line.window_zeros().iter().map(|z| z.t).collect();
            let summary = SpectrumSummary {
                a: line.a,
                t_max: line.t_max,
                theta: theta.name(),
                adjustments: line.adjustments,
                n_zeros: line.window_len,
                n_roots: roots.len(),
                matches: rep.matches.len(),
                sparsity_consistent: rep.sparsity_consistent,
                cv_line: nn_cv(&ts, line_counting(line.a)),
                cv_theta_zeros: nn_cv(&rep.theta_zeros, |t| theta.zero_counting(t)),
            };
            emit_json(&args.out, &summary)
        }
    }
}

#[derive(Serialize)]
struct InterlaceOut {
    a: f64,
    t_max: f64,
    brackets: usize,
    roots: usize,
    all_interior: bool,
    all_certified: bool,
    tail_terms: usize,
    max_shift_under_tail_doubling: f64,
    tail_stable: bool,
}

fn interlace(args: &SpectrumArgs) -> anyhow::Result<()> {
    let (_, line, roots) = solve(args, args.tail_terms)?;
    let (_, _, doubled) = solve(args, 2 * args.tail_terms)?;
    if doubled.len() != roots.len() {
        return Err(Falsified("root count changed under tail doubling".into()).into());
    }
    let shift = roots
        .iter()
        .zip(&doubled)
        .map(|(a, b)| (a.tau - b.tau).abs())
        .fold(0.0, f64::max);
    let out = InterlaceOut {
        a: line.a,
        t_max: line.t_max,
        brackets: line.window_len - 1,
        roots: roots.len(),
        all_interior: roots.iter().all(|r| r.lo < r.tau && r.tau < r.hi),
        all_certified: roots.iter().all(|r| r.deriv_cert > 0.0),
        tail_terms: args.tail_terms,
        max_shift_under_tail_doubling: shift,
        tail_stable: shift < 1e-7,
    };
    emit_json(&args.out, &out)
}

fn correlate(args: &CorrelateArgs) -> anyhow::Result<()> {
    if !(args.t_min < args.t_max) {
        bail!(theta_spectrum::Error::InvalidArgument(
            "--t-min must be below --t-max".into()
        ));
    }
    let (_, zeros) = load_zeros(args.a, args.t_max)?;
    let theta = ThetaProvider::by_name(&args.theta)?;
    let ts: Vec<f64> = zeros.iter().map(|z| z.t).filter(|t| *t >= args.t_min).collect();
    let tz = theta.line_zeros(args.t_min, args.t_max)?;
    let line = pair_correlation(&ts, line_counting(args.a), args.bin_width, args.max_gap)?;
    let other = pair_correlation(&tz, |t| theta.zero_counting(t), args.bin_width, args.max_gap)
        .map_err(|e| anyhow!("θE zeros: {e}"))?;
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("set,lo,hi,count,density\n");
            for (name, pc) in [("line", &line), ("theta", &other)] {
                for (b, d) in pc.bins.iter().zip(&pc.density) {
                    writeln!(s, "{name},{},{},{},{}", b.lo, b.hi, b.count, d)?;
                }
            }
            emit_csv(&args.out, &s)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                a: f64,
                t_min: f64,
                t_max: f64,
                n_line: usize,
                n_theta: usize,
                cv_line: f64,
                cv_theta_zeros: f64,
                mean_line: f64,
                mean_theta: f64,
            }
            emit_json(
                &args.out,
                &Out {
                    a: args.a,
                    t_min: args.t_min,
                    t_max: args.t_max,
                    n_line: line.n,
                    n_theta: other.n,
                    cv_line: line.nn_cv,
                    cv_theta_zeros: other.nn_cv,
                    mean_line: line.nn_mean,
                    mean_theta: other.nn_mean,
                },
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let falsified: anyhow::Error = Falsified("x".into()).into();
        assert_eq!(exit_code(&falsified), EXIT_INVARIANT);
        let missing: anyhow::Error = theta_spectrum::Error::NoSignChange {
            index: 3,
            lo: 1.0,
            hi: 2.0,
        }
        .into();
        assert_eq!(exit_code(&missing), EXIT_INVARIANT);
        let usage: anyhow::Error = theta_spectrum::Error::InvalidArgument("a".into()).into();
        assert_eq!(exit_code(&usage), EXIT_USAGE);
        assert_eq!(exit_code(&anyhow!("io")), EXIT_USAGE);
    }

    #[test]
    fn parses_nested_ms_norm() {
        let c = RunConfig::try_parse_from(["t", "ms", "norm", "--a", "3", "--t", "12.5"]).unwrap();
        match c.command {
            Command::Ms { op: MsOp::Norm(a) } => assert_eq!((a.a, a.t), (3.0, 12.5)),
            other => panic!("{other:?}"),
        }
        assert_eq!(run_from_args(["t", "--nope"]), EXIT_USAGE);
    }
}
