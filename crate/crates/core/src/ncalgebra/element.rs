use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::qarith::{Laurent, Rational};

use super::engine;
use super::monomial::{Gen, Monomial};

/// Element of the sphere algebra in normal form: a finite sum of normal
/// monomials with Laurent coefficients, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    n: usize,
    terms: BTreeMap<Monomial, Laurent>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Element { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Laurent::one())
    }

    pub fn scalar(n: usize, c: Laurent) -> Self {
        Self::from_monomial(Monomial::one(n), c)
    }

    pub fn from_monomial(m: Monomial, c: Laurent) -> Self {
        let mut e = Element::zero(m.n());
        e.add_term(m, c);
        e
    }

    /// The generator `z_i` or `z_i*`.
    pub fn gen(n: usize, g: Gen) -> Result<Self> {
        if g.index > n {
            return Err(Error::Index { index: g.index, max: n });
        }
        let mut m = Monomial::one(n);
        if g.star {
            m.set(g.index, 0, 1);
        } else {
            m.set(g.index, 1, 0);
        }
        Ok(Self::from_monomial(m, Laurent::one()))
    }

    pub fn z(n: usize, i: usize) -> Self {
        Self::gen(n, Gen::z(i)).expect("index in range")
    }

    pub fn zs(n: usize, i: usize) -> Self {
        Self::gen(n, Gen::zs(i)).expect("index in range")
    }

    /// Normal form of a word in the generators, reduced left to right.
    pub fn from_word(n: usize, word: &[Gen]) -> Result<Self> {
        if let Some(g) = word.iter().find(|g| g.index > n) {
            return Err(Error::Index { index: g.index, max: n });
        }
        let mut e = Element::one(n);
        for &g in word {
            e = e.mul_gen(g);
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: Monomial, c: Laurent) {
        debug_assert_eq!(m.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Element, c: &Laurent) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), if c.is_one() { x.clone() } else { x * c });
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Laurent {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Element::one(self.n)
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Element::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    /// Right multiplication by a single generator.
    pub fn mul_gen(&self, g: Gen) -> Self {
        let mut out = Element::zero(self.n);
        for (m, c) in &self.terms {
            out.add_scaled(&engine::mono_times_gen(m, g), c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Element::one(self.n), |acc, _| &acc * self)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &Element) -> Self {
        &(self * other) - &(other * self)
    }

    /// The involution: reverse words, star every letter, keep (real) coefficients.
    pub fn adjoint(&self) -> Self {
        let mut out = Element::zero(self.n);
        for (m, c) in &self.terms {
            let word: Vec<Gen> = m.letters().into_iter().rev().map(Gen::adjoint).collect();
            out.add_scaled(&Element::from_word(self.n, &word).expect("same algebra"), c);
        }
        out
    }

    /// Grades of the monomials present, with respect to the weights `l`.
    pub fn grades(&self, l: &[i64]) -> Vec<i64> {
        let mut g: Vec<i64> = self.terms.keys().map(|m| m.grade(l)).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// `Some(d)` if every monomial has grade `d` (the zero element has every grade).
    pub fn homogeneous_grade(&self, l: &[i64]) -> Option<i64> {
        match self.grades(l).as_slice() {
            [] => Some(0),
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Image under `z_j ↦ 0` for `j > h`, as an element of the algebra with `n = h`.
    pub fn restrict(&self, h: usize) -> Element {
        assert!(h >= 1 && h <= self.n);
        let mut out = Element::zero(h);
        for (m, c) in &self.terms {
            if m.supported_below(h) {
                let j: Vec<u32> = (0..=h).map(|i| m.j(i)).collect();
                let k: Vec<u32> = (0..=h).map(|i| m.k(i)).collect();
                out.add_term(Monomial::new(&j, &k).expect("normal"), c.clone());
            }
        }
        out
    }

    /// Embed into the algebra with more generators (new ones unused).
    pub fn extend(&self, n: usize) -> Element {
        assert!(n >= self.n);
        let mut out = Element::zero(n);
        for (m, c) in &self.terms {
            let j: Vec<u32> = (0..=n).map(|i| if i <= self.n { m.j(i) } else { 0 }).collect();
            let k: Vec<u32> = (0..=n).map(|i| if i <= self.n { m.k(i) } else { 0 }).collect();
            out.add_term(Monomial::new(&j, &k).expect("normal"), c.clone());
        }
        out
    }

    /// Coefficients evaluated at a rational `q`.
    pub fn eval_coefficients(&self, q: &Rational) -> Vec<(Monomial, Rational)> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.eval_rational(q))).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.n, rhs.n, "elements of different algebras");
        let mut out = self.clone();
        out.add_scaled(rhs, &Laurent::one());
        out
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.n, rhs.n, "elements of different algebras");
        let mut out = self.clone();
        out.add_scaled(rhs, &Laurent::from_int(-1));
        out
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&Laurent::from_int(-1))
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        assert_eq!(self.n, rhs.n, "elements of different algebras");
        engine::multiply(self, rhs)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

/// Canonical text form: monomials in increasing order, each preceded by its
/// coefficient in parentheses with explicit `q` exponents.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {m}")?;
        }
        Ok(())
    }
}
