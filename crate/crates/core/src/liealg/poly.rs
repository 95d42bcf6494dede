//! Polynomials with exact rational coefficients in named symbols.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A monomial: symbols with positive exponents, sorted by name.
pub type PolyMonomial = Vec<(String, u32)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<PolyMonomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat(n, 1))
    }

    pub fn symbol(name: &str) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![(name.to_string(), 1)], BigRational::one());
        p
    }

    fn add_term(&mut self, mono: PolyMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolyMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::int(1);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Replaces every occurrence of `name` by `value`.
    pub fn substitute(&self, name: &str, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut power = 0;
            for (s, e) in m {
                if s == name {
                    power = *e;
                } else {
                    rest.push((s.clone(), *e));
                }
            }
            let mut base = Poly::zero();
            base.add_term(rest, c.clone());
            out = &out + &(&base * &value.pow(power));
        }
        out
    }

    /// Simultaneous substitution of several symbols.
    pub fn substitute_all(&self, map: &[(&str, Poly)]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (s, e) in m {
                let factor = match map.iter().find(|(n, _)| n == s) {
                    Some((_, v)) => v.pow(*e),
                    None => {
                        let mut p = Poly::zero();
                        p.add_term(vec![(s.clone(), *e)], BigRational::one());
                        p
                    }
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    /// Canonical string: terms by descending degree, then by monomial.
    pub fn to_canonical_string(&self) -> String {
        let mut keys: Vec<&PolyMonomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().map(|(_, e)| e).sum();
            let db: u32 = b.iter().map(|(_, e)| e).sum();
            db.cmp(&da).then_with(|| expand(a).cmp(&expand(b)))
        });
        self.render(&keys)
    }

    /// Renders in the term order of `reference`, provided the reference
    /// parses to the same polynomial; otherwise an error.
    pub fn format_like(&self, reference: &str) -> Result<String> {
        let (parsed, order) = parse_with_order(reference)?;
        if &parsed != self {
            return Err(Error::InvalidArgument(format!(
                "{} differs from reference {reference}",
                self.to_canonical_string()
            )));
        }
        let keys: Vec<&PolyMonomial> = order.iter().filter(|m| self.terms.contains_key(*m)).collect();
        Ok(self.render(&keys))
    }

    fn render(&self, keys: &[&PolyMonomial]) -> String {
        if keys.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m
                .iter()
                .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Parses expressions such as `4*s^2 + 1/2*sf^2 - 8*sf - s*t + 3`.
    pub fn parse(text: &str) -> Result<Poly> {
        parse_with_order(text).map(|(p, _)| p)
    }
}

fn expand(m: &PolyMonomial) -> Vec<&str> {
    m.iter()
        .flat_map(|(s, e)| std::iter::repeat_n(s.as_str(), *e as usize))
        .collect()
}

fn parse_with_order(text: &str) -> Result<(Poly, Vec<PolyMonomial>)> {
    let err = |m: String| Error::Parse { line: 1, message: m };
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(err("empty polynomial".into()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in cleaned.char_indices() {
        if (ch == '+' || ch == '-') && !(i > 0 && cleaned[..i].ends_with('^')) {
            if !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
            } else if i != 0 {
                return Err(err(format!("dangling sign in {text:?}")));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(err(format!("trailing sign in {text:?}")));
    }
    terms.push((negative, current));

    let mut poly = Poly::zero();
    let mut order = Vec::new();
    for (neg, term) in terms {
        let mut coeff = BigRational::one();
        let mut mono: BTreeMap<String, u32> = BTreeMap::new();
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err(format!("empty factor in {term:?}")));
            }
            if factor.chars().next().unwrap().is_ascii_digit() {
                let c = match factor.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.parse().map_err(|_| err(format!("bad number {factor:?}")))?;
                        let d: BigInt = d.parse().map_err(|_| err(format!("bad number {factor:?}")))?;
                        if d.is_zero() {
                            return Err(err("zero denominator".into()));
                        }
                        BigRational::new(n, d)
                    }
                    None => {
                        BigRational::from_integer(factor.parse().map_err(|_| err(format!("bad number {factor:?}")))?)
                    }
                };
                coeff *= c;
            } else {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>().map_err(|_| err(format!("bad exponent {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(err(format!("bad symbol {name:?}")));
                }
                *mono.entry(name.to_string()).or_insert(0) += e;
            }
        }
        if neg {
            coeff = -coeff;
        }
        let key: PolyMonomial = mono.into_iter().filter(|(_, e)| *e > 0).collect();
        if !order.contains(&key) {
            order.push(key.clone());
        }
        poly.add_term(key, coeff);
    }
    Ok((poly, order))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&rat(-1, 1))
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut merged: BTreeMap<String, u32> = ma.iter().cloned().collect();
                for (s, e) in mb {
                    *merged.entry(s.clone()).or_insert(0) += e;
                }
                out.add_term(merged.into_iter().collect(), ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_op {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);
