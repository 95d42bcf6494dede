//! Simple-reflection intertwining operators on unramified principal-series
//! parameters, with their formal products of local zeta ratios.

use crate::error::{Error, Result};
use crate::liealg::rat;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// `Σ c_k · symbol_k + constant`, exact.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm {
    coeffs: BTreeMap<String, BigRational>,
    constant: BigRational,
}

impl LinForm {
    pub fn constant(c: BigRational) -> Self {
        LinForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n, 1))
    }

    pub fn symbol(name: &str) -> Self {
        let mut f = Self::default();
        f.coeffs.insert(name.to_string(), BigRational::one());
        f
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.constant
    }

    pub fn coefficient(&self, name: &str) -> BigRational {
        self.coeffs.get(name).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&String, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn shift(&self, c: i64) -> Self {
        self + &LinForm::int(c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = LinForm::constant(&self.constant * c);
        for (s, v) in &self.coeffs {
            let p = v * c;
            if !p.is_zero() {
                out.coeffs.insert(s.clone(), p);
            }
        }
        out
    }

    /// Simultaneous substitution of symbols by linear forms.
    pub fn substitute(&self, map: &BTreeMap<String, LinForm>) -> Self {
        let mut out = LinForm::constant(self.constant.clone());
        for (s, c) in &self.coeffs {
            let piece = match map.get(s) {
                Some(f) => f.scale(c),
                None => LinForm::symbol(s).scale(c),
            };
            out = &out + &piece;
        }
        out
    }

    /// The leading symbol (first in name order), used for permutation tracking.
    pub fn leading_symbol(&self) -> Option<&str> {
        self.coeffs.keys().next().map(String::as_str)
    }
}

impl<'a> Add<&'a LinForm> for &'a LinForm {
    type Output = LinForm;
    fn add(self, rhs: &LinForm) -> LinForm {
        let mut out = self.clone();
        out.constant += &rhs.constant;
        for (s, c) in &rhs.coeffs {
            match out.coeffs.entry(s.clone()) {
                Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
                Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        out
    }
}

impl Neg for &LinForm {
    type Output = LinForm;
    fn neg(self) -> LinForm {
        self.scale(&rat(-1, 1))
    }
}

impl<'a> Sub<&'a LinForm> for &'a LinForm {
    type Output = LinForm;
    fn sub(self, rhs: &LinForm) -> LinForm {
        self + &(-rhs)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, c: &BigRational, name: Option<&str>| -> fmt::Result {
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match name {
                Some(n) if mag.is_one() => f.write_str(n),
                Some(n) => write!(f, "{mag}*{n}"),
                None => write!(f, "{mag}"),
            }
        };
        for (s, c) in &self.coeffs {
            put(f, c, Some(s))?;
        }
        if !self.constant.is_zero() {
            put(f, &self.constant, None)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for LinForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Principal-series parameters `(p_1, …, p_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamTuple(pub Vec<LinForm>);

impl ParamTuple {
    /// `(s1, …, sn)`.
    pub fn generic(n: usize) -> Self {
        ParamTuple((1..=n).map(|i| LinForm::symbol(&format!("s{i}"))).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn substitute(&self, map: &BTreeMap<String, LinForm>) -> Self {
        ParamTuple(self.0.iter().map(|f| f.substitute(map)).collect())
    }
}

impl fmt::Display for ParamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// The formal ratio `ζ(numerator) / ζ(denominator)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub numerator: LinForm,
    pub denominator: LinForm,
}

impl Factor {
    /// `ζ(d - 1) / ζ(d)`.
    pub fn reflection(d: LinForm) -> Self {
        Factor {
            numerator: d.shift(-1),
            denominator: d,
        }
    }

    pub fn inverted(&self) -> Self {
        Factor {
            numerator: self.denominator.clone(),
            denominator: self.numerator.clone(),
        }
    }

    pub fn substitute(&self, map: &BTreeMap<String, LinForm>) -> Self {
        Factor {
            numerator: self.numerator.substitute(map),
            denominator: self.denominator.substitute(map),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({})/zeta({})", self.numerator, self.denominator)
    }
}

/// An ordered list of factors; nothing cancels unless [`FactorProduct::cancel`]
/// is called.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FactorProduct(pub Vec<Factor>);

/// Numerator and denominator multisets left after cancellation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reduced {
    pub numerators: BTreeMap<LinForm, i64>,
    pub denominators: BTreeMap<LinForm, i64>,
}

impl Reduced {
    pub fn is_one(&self) -> bool {
        self.numerators.is_empty() && self.denominators.is_empty()
    }
}

impl FactorProduct {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverted(&self) -> Self {
        FactorProduct(self.0.iter().map(Factor::inverted).collect())
    }

    pub fn substitute(&self, map: &BTreeMap<String, LinForm>) -> Self {
        FactorProduct(self.0.iter().map(|f| f.substitute(map)).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        FactorProduct(v)
    }

    /// Cancels equal arguments between numerators and denominators. With
    /// `completed`, each argument `y` is first identified with `1 - y`, as
    /// for the completed zeta function.
    pub fn cancel(&self, completed: bool) -> Reduced {
        let canon = |y: &LinForm| {
            if completed {
                let r = &LinForm::int(1) - y;
                if r < *y {
                    return r;
                }
            }
            y.clone()
        };
        let mut count: BTreeMap<LinForm, i64> = BTreeMap::new();
        for f in &self.0 {
            *count.entry(canon(&f.numerator)).or_insert(0) += 1;
            *count.entry(canon(&f.denominator)).or_insert(0) -= 1;
        }
        let mut out = Reduced::default();
        for (k, v) in count {
            match v.signum() {
                1 => {
                    out.numerators.insert(k, v);
                }
                -1 => {
                    out.denominators.insert(k, -v);
                }
                _ => {}
            }
        }
        out
    }
}

/// One step of a composed word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub reflection: usize,
    pub before: ParamTuple,
    pub after: ParamTuple,
    pub factor: Factor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordResult {
    pub word: Vec<usize>,
    pub start: ParamTuple,
    pub end: ParamTuple,
    pub steps: Vec<Step>,
    pub factors: FactorProduct,
    /// `permutation[k]` is the 0-based start slot whose entry sits at slot `k`.
    pub permutation: Vec<usize>,
}

/// `σ_k : (…, p_k, p_{k+1}, …) ↦ (…, p_{k+1} + 1, p_k - 1, …)` with factor
/// `ζ(d - 1)/ζ(d)`, `d = p_k - p_{k+1}`; `k` is 1-based.
pub fn apply_reflection(k: usize, p: &ParamTuple) -> Result<(ParamTuple, Factor)> {
    let n = p.rank();
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "reflection index {k} outside 1..{}",
            n.saturating_sub(1)
        )));
    }
    let (a, b) = (&p.0[k - 1], &p.0[k]);
    let factor = Factor::reflection(a - b);
    let mut q = p.clone();
    q.0[k - 1] = b.shift(1);
    q.0[k] = a.shift(-1);
    Ok((q, factor))
}

/// Applies `word[0]` first, then `word[1]`, …; the operator written
/// `S_{w_last} ∘ … ∘ S_{w_first}`.
pub fn compose_word(word: &[usize], p: &ParamTuple) -> Result<WordResult> {
    let mut cur = p.clone();
    let mut steps = Vec::with_capacity(word.len());
    let mut perm: Vec<usize> = (0..p.rank()).collect();
    for &k in word {
        let (next, factor) = apply_reflection(k, &cur)?;
        perm.swap(k - 1, k);
        steps.push(Step {
            reflection: k,
            before: cur,
            after: next.clone(),
            factor,
        });
        cur = next;
    }
    Ok(WordResult {
        word: word.to_vec(),
        start: p.clone(),
        end: cur,
        factors: FactorProduct(steps.iter().map(|s| s.factor.clone()).collect()),
        steps,
        permutation: perm,
    })
}

/// The chain σ₂, σ₁, σ₃, σ₂ carrying a Levi-block Eisenstein parameter to
/// its Weyl-conjugate.
pub const RANKIN_SELBERG_WORD: [usize; 4] = [2, 1, 3, 2];

fn map_of(pairs: &[(&str, LinForm)]) -> BTreeMap<String, LinForm> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn lin(terms: &[(i64, &str)], c: i64) -> LinForm {
    let mut f = LinForm::int(c);
    for (k, s) in terms {
        f = &f + &LinForm::symbol(s).scale(&rat(*k, 1));
    }
    f
}

/// `(s + sf1, s - sf1, -s + sf2, -s - sf2)`.
pub fn rankin_selberg_preset() -> BTreeMap<String, LinForm> {
    map_of(&[
        ("s1", lin(&[(1, "s"), (1, "sf1")], 0)),
        ("s2", lin(&[(1, "s"), (-1, "sf1")], 0)),
        ("s3", lin(&[(-1, "s"), (1, "sf2")], 0)),
        ("s4", lin(&[(-1, "s"), (-1, "sf2")], 0)),
    ])
}

/// `(s + sf, -s + sf, s - sf, -s - sf)`, the tuple used for the Casimir scalar.
pub fn casimir_preset() -> BTreeMap<String, LinForm> {
    map_of(&[
        ("s1", lin(&[(1, "s"), (1, "sf")], 0)),
        ("s2", lin(&[(-1, "s"), (1, "sf")], 0)),
        ("s3", lin(&[(1, "s"), (-1, "sf")], 0)),
        ("s4", lin(&[(-1, "s"), (-1, "sf")], 0)),
    ])
}

pub fn preset(name: &str) -> Result<BTreeMap<String, LinForm>> {
    match name {
        "rankin-selberg" => Ok(rankin_selberg_preset()),
        "section5" | "gl4-split" => Ok(casimir_preset()),
        _ => Err(Error::InvalidArgument(format!("unknown preset {name}"))),
    }
}

/// Expected denominators `2s - sf1 - sf2, 2s + sf1 - sf2 - 1, 2s - sf1 + sf2 - 1, 2s + sf1 + sf2 - 2`.
pub fn rankin_selberg_arguments() -> Vec<LinForm> {
    vec![
        lin(&[(2, "s"), (-1, "sf1"), (-1, "sf2")], 0),
        lin(&[(2, "s"), (1, "sf1"), (-1, "sf2")], -1),
        lin(&[(2, "s"), (-1, "sf1"), (1, "sf2")], -1),
        lin(&[(2, "s"), (1, "sf1"), (1, "sf2")], -2),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorCheck {
    pub expected: LinForm,
    pub found: LinForm,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Specialization {
    pub end: ParamTuple,
    pub factors: FactorProduct,
    pub checks: Vec<FactorCheck>,
    pub pass: bool,
}

/// Substitutes the Rankin–Selberg tuple into a `[2,1,3,2]` result and
/// compares each denominator with the expected Satake-shifted argument.
pub fn specialize_rankin_selberg(result: &WordResult) -> Result<Specialization> {
    if result.word != RANKIN_SELBERG_WORD || result.start != ParamTuple::generic(4) {
        return Err(Error::InvalidArgument(
            "expects the word 2,1,3,2 on (s1, s2, s3, s4)".into(),
        ));
    }
    let map = rankin_selberg_preset();
    let factors = result.factors.substitute(&map);
    let checks: Vec<FactorCheck> = factors
        .0
        .iter()
        .zip(rankin_selberg_arguments())
        .map(|(f, e)| FactorCheck {
            pass: f.denominator == e && f.numerator == e.shift(-1),
            expected: e,
            found: f.denominator.clone(),
        })
        .collect();
    let bad: Vec<String> = checks
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.pass)
        .map(|(i, c)| format!("factor {}: {} (expected {})", i + 1, c.found, c.expected))
        .collect();
    if !bad.is_empty() {
        return Err(Error::SpecializationMismatch(bad.join("; ")));
    }
    Ok(Specialization {
        end: result.end.substitute(&map),
        factors,
        checks,
        pass: true,
    })
}

/// Whether `P(s) · P(center - s) = 1` after identifying `ζ(y)` with `ζ(1 - y)`.
pub fn reflection_symmetric(product: &FactorProduct, center: i64) -> bool {
    let map = map_of(&[("s", lin(&[(-1, "s")], center))]);
    product.concat(&product.substitute(&map)).cancel(true).is_one()
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidReport {
    pub left: ParamTuple,
    pub right: ParamTuple,
    pub same_permutation: bool,
    pub same_parameters: bool,
}

/// Compares `[1,2,1]` with `[2,1,2]` on `(s1, s2, s3)`.
pub fn braid_report() -> BraidReport {
    let p = ParamTuple::generic(3);
    let a = compose_word(&[1, 2, 1], &p).expect("valid word");
    let b = compose_word(&[2, 1, 2], &p).expect("valid word");
    BraidReport {
        same_permutation: a.permutation == b.permutation,
        same_parameters: a.end == b.end,
        left: a.end,
        right: b.end,
    }
}

/// Parses `2,1,3,2`.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad reflection index {t:?}")))
        })
        .collect()
}
