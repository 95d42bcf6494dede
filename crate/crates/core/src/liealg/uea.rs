//! Universal enveloping algebra of gl_n in PBW normal form.

use super::poly::{rat, Poly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The matrix unit `E(i, j)` (1-based); `E(i, i)` is the Cartan element `H(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub i: u8,
    pub j: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Block {
    Lower,
    Cartan,
    Upper,
}

impl Gen {
    pub fn new(i: u8, j: u8) -> Self {
        Gen { i, j }
    }

    pub fn block(self) -> Block {
        match self.i.cmp(&self.j) {
            std::cmp::Ordering::Greater => Block::Lower,
            std::cmp::Ordering::Equal => Block::Cartan,
            std::cmp::Ordering::Less => Block::Upper,
        }
    }

    pub fn is_cartan(self) -> bool {
        self.i == self.j
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_cartan() {
            write!(f, "H({})", self.i)
        } else {
            write!(f, "E({},{})", self.i, self.j)
        }
    }
}

/// Block order of a PBW basis; within a block generators are lexicographic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PbwOrder {
    /// strictly lower < Cartan < strictly upper (the stored form)
    #[default]
    LowerFirst,
    /// strictly upper < Cartan < strictly lower
    UpperFirst,
}

impl PbwOrder {
    fn key(self, g: Gen) -> (u8, u8, u8) {
        let rank = match (self, g.block()) {
            (_, Block::Cartan) => 1,
            (PbwOrder::LowerFirst, Block::Lower) | (PbwOrder::UpperFirst, Block::Upper) => 0,
            _ => 2,
        };
        (rank, g.i, g.j)
    }
}

/// An ordered word of generators.
pub type Monomial = Vec<Gen>;

/// Exact element of U(gl_n), stored as PBW-ordered monomials with nonzero
/// rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaElement {
    n: u8,
    order: PbwOrder,
    terms: BTreeMap<Monomial, BigRational>,
}

fn accumulate(map: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
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

/// Rewrites arbitrary words into PBW order using
/// `[E(a,b), E(c,d)] = δ_bc E(a,d) - δ_da E(c,b)`.
fn normalize(order: PbwOrder, words: BTreeMap<Monomial, BigRational>) -> BTreeMap<Monomial, BigRational> {
    let mut out = BTreeMap::new();
    let mut pending = words;
    while let Some((w, c)) = pending.pop_first() {
        let inversion = w.windows(2).position(|p| order.key(p[0]) > order.key(p[1]));
        let Some(k) = inversion else {
            accumulate(&mut out, w, c);
            continue;
        };
        let (x, y) = (w[k], w[k + 1]);
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        accumulate(&mut pending, swapped, c.clone());
        let splice = |g: Gen| {
            let mut v = Vec::with_capacity(w.len() - 1);
            v.extend_from_slice(&w[..k]);
            v.push(g);
            v.extend_from_slice(&w[k + 2..]);
            v
        };
        if x.j == y.i {
            accumulate(&mut pending, splice(Gen::new(x.i, y.j)), c.clone());
        }
        if y.j == x.i {
            accumulate(&mut pending, splice(Gen::new(y.i, x.j)), -c);
        }
    }
    out
}

impl UeaElement {
    pub fn zero(n: u8) -> Self {
        UeaElement {
            n,
            order: PbwOrder::LowerFirst,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: u8, c: BigRational) -> Self {
        let mut x = Self::zero(n);
        accumulate(&mut x.terms, Vec::new(), c);
        x
    }

    pub fn one(n: u8) -> Self {
        Self::scalar(n, BigRational::one())
    }

    /// `E(i, j)`; panics if an index is outside `1..=n`.
    pub fn e(n: u8, i: u8, j: u8) -> Self {
        assert!((1..=n).contains(&i) && (1..=n).contains(&j), "index out of range");
        let mut x = Self::zero(n);
        x.terms.insert(vec![Gen::new(i, j)], BigRational::one());
        x
    }

    pub fn h(n: u8, i: u8) -> Self {
        Self::e(n, i, i)
    }

    /// `H(i, j) = H(i) - H(j)`.
    pub fn h_pair(n: u8, i: u8, j: u8) -> Self {
        &Self::h(n, i) - &Self::h(n, j)
    }

    /// `H(1,2,3,4) = diag(1, 1, -1, -1)`.
    pub fn h_1234() -> Self {
        &(&Self::h(4, 1) + &Self::h(4, 2)) - &(&Self::h(4, 3) + &Self::h(4, 4))
    }

    /// Normal form of `c · w` for an arbitrary word `w`.
    pub fn from_word(n: u8, word: &[Gen], c: BigRational) -> Self {
        let mut m = BTreeMap::new();
        accumulate(&mut m, word.to_vec(), c);
        UeaElement {
            n,
            order: PbwOrder::LowerFirst,
            terms: normalize(PbwOrder::LowerFirst, m),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn order(&self) -> PbwOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[Gen]) -> BigRational {
        self.terms.get(word).cloned().unwrap_or_else(BigRational::zero)
    }

    /// True if every stored word is non-decreasing in the element's order.
    pub fn is_normal_ordered(&self) -> bool {
        self.terms
            .keys()
            .all(|w| w.windows(2).all(|p| self.order.key(p[0]) <= self.order.key(p[1])))
    }

    /// Re-normalizes (a no-op on elements built through this API).
    pub fn normal_form(&self) -> Self {
        self.with_order(self.order)
    }

    /// The same element rewritten in another PBW block order.
    pub fn with_order(&self, order: PbwOrder) -> Self {
        UeaElement {
            n: self.n,
            order,
            terms: normalize(order, self.terms.clone()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = UeaElement {
            n: self.n,
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (w, v) in &self.terms {
            accumulate(&mut out.terms, w.clone(), v * c);
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        let other = if other.order == self.order {
            other.clone()
        } else {
            other.with_order(self.order)
        };
        let mut words = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                accumulate(&mut words, w, ca * cb);
            }
        }
        UeaElement {
            n: self.n,
            order: self.order,
            terms: normalize(self.order, words),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.multiply(other) - &other.multiply(self)
    }

    /// Splits into (pure-Cartan part, part whose words contain an off-diagonal factor).
    pub fn split_cartan(&self) -> (Self, Self) {
        let mut cartan = Self::zero(self.n).with_order(self.order);
        let mut rest = cartan.clone();
        for (w, c) in &self.terms {
            let target = if w.iter().all(|g| g.is_cartan()) {
                &mut cartan
            } else {
                &mut rest
            };
            accumulate(&mut target.terms, w.clone(), c.clone());
        }
        (cartan, rest)
    }

    /// Evaluates a pure-Cartan element at `H(i) ↦ params[i-1]`; words with
    /// an off-diagonal factor are dropped.
    pub fn evaluate_cartan(&self, params: &[Poly]) -> Poly {
        assert_eq!(params.len(), self.n as usize, "need one parameter per H(i)");
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            if !w.iter().all(|g| g.is_cartan()) {
                continue;
            }
            let mut term = Poly::constant(c.clone());
            for g in w {
                term = &term * &params[(g.i - 1) as usize];
            }
            out = &out + &term;
        }
        out
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let word: String = w.iter().map(|g| g.to_string()).collect();
            match (mag.is_one(), word.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => f.write_str(&word)?,
                (false, false) => write!(f, "{mag}*{word}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a UeaElement> for &'a UeaElement {
    type Output = UeaElement;
    fn add(self, rhs: &UeaElement) -> UeaElement {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        let rhs = if rhs.order == self.order {
            rhs.clone()
        } else {
            rhs.with_order(self.order)
        };
        let mut out = self.clone();
        for (w, c) in rhs.terms {
            accumulate(&mut out.terms, w, c);
        }
        out
    }
}

impl Neg for &UeaElement {
    type Output = UeaElement;
    fn neg(self) -> UeaElement {
        self.scale(&rat(-1, 1))
    }
}

impl<'a> Sub<&'a UeaElement> for &'a UeaElement {
    type Output = UeaElement;
    fn sub(self, rhs: &UeaElement) -> UeaElement {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a UeaElement> for &'a UeaElement {
    type Output = UeaElement;
    fn mul(self, rhs: &UeaElement) -> UeaElement {
        self.multiply(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn e12_e21_reorders_with_cartan_correction() {
        let x = UeaElement::e(2, 1, 2).multiply(&UeaElement::e(2, 2, 1));
        let expect =
            &UeaElement::from_word(2, &[Gen::new(2, 1), Gen::new(1, 2)], rat(1, 1)) + &UeaElement::h_pair(2, 1, 2);
        assert_eq!(x, expect);
        assert_eq!(x.to_string(), "H(1) + E(2,1)E(1,2) - H(2)");
    }

    #[test]
    fn cartan_elements_commute() {
        let a = UeaElement::h(3, 1).multiply(&UeaElement::h(3, 2));
        let b = UeaElement::h(3, 2).multiply(&UeaElement::h(3, 1));
        assert_eq!(a, b);
    }

    #[test]
    fn brackets_of_basis_pairs() {
        let n = 3;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        let x = UeaElement::e(n, a, b);
                        let y = UeaElement::e(n, c, d);
                        let mut expect = UeaElement::zero(n);
                        if b == c {
                            expect = &expect + &UeaElement::e(n, a, d);
                        }
                        if d == a {
                            expect = &expect - &UeaElement::e(n, c, b);
                        }
                        assert_eq!(x.commutator(&y), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn reordering_round_trip() {
        let x = UeaElement::e(3, 1, 3)
            .multiply(&UeaElement::e(3, 3, 2))
            .multiply(&UeaElement::e(3, 2, 1));
        let y = x.with_order(PbwOrder::UpperFirst);
        assert!(y.is_normal_ordered());
        assert_eq!(y.with_order(PbwOrder::LowerFirst), x);
    }

    fn small_element(n: u8) -> impl Strategy<Value = UeaElement> {
        let gen = (1..=n, 1..=n).prop_map(|(i, j)| Gen::new(i, j));
        let word = prop::collection::vec(gen, 0..3);
        let term = (word, -3i64..=3);
        prop::collection::vec(term, 1..4).prop_map(move |ts| {
            let mut x = UeaElement::zero(n);
            for (w, c) in ts {
                x = &x + &UeaElement::from_word(n, &w, rat(c, 1));
            }
            x
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn associativity(x in small_element(3), y in small_element(3), z in small_element(3)) {
            prop_assert_eq!(x.multiply(&y).multiply(&z), x.multiply(&y.multiply(&z)));
        }

        #[test]
        fn normal_form_idempotent(x in small_element(4)) {
            prop_assert!(x.is_normal_ordered());
            prop_assert_eq!(x.normal_form(), x.clone());
            prop_assert_eq!(x.normal_form().normal_form(), x.normal_form());
        }

        #[test]
        fn bilinearity(x in small_element(2), y in small_element(2), z in small_element(2), c in -4i64..4) {
            let lhs = x.multiply(&(&y + &z.scale(&rat(c, 1))));
            let rhs = &x.multiply(&y) + &x.multiply(&z).scale(&rat(c, 1));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
