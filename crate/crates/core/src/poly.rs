//! Commutative multivariate polynomials with Laurent coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::qarith::{Laurent, Rational};

pub type Exps = SmallVec<[u32; 4]>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exps, Laurent>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Laurent) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(SmallVec::from_elem(0, nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Laurent::one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable {v} out of range");
        let mut e: Exps = SmallVec::from_elem(0, nvars);
        e[v] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Laurent::one());
        p
    }

    pub fn monomial(exps: Exps, c: Laurent) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Exps, c: Laurent) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Laurent)> {
        self.terms.iter()
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
        *self == Self::one(self.nvars)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Substitute polynomials (all in the same ring) for every variable.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (v, &k) in e.iter().enumerate() {
                while powers[v].len() <= k as usize {
                    let next = powers[v].last().unwrap() * &images[v];
                    powers[v].push(next);
                }
                term = &term * &powers[v][k as usize];
            }
            out = &out + &term;
        }
        out
    }

    pub fn eval_rational(&self, q: &Rational, point: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for (e, c) in &self.terms {
            let mut t = c.eval_rational(q);
            for (v, &k) in e.iter().enumerate() {
                t *= num_traits::pow(point[v].clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, q: f64, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.eval_f64(q) * e.iter().enumerate().map(|(v, &k)| point[v].powi(k as i32)).product::<f64>())
            .sum()
    }

    /// Exact quotient by the variable `v`, if every term contains it.
    pub fn div_var(&self, v: usize) -> Option<Poly> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                return None;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            out.add_term(e2, c.clone());
        }
        Some(out)
    }

    /// Embed into a ring with more variables; variable `v` goes to `map[v]`.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2: Exps = SmallVec::from_elem(0, nvars);
            for (v, &k) in e.iter().enumerate() {
                e2[map[v]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&Laurent::from_int(-1))
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Prints variables as `x{offset+v}`.
pub struct PolyDisplay<'a> {
    pub poly: &'a Poly,
    pub offset: usize,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.poly.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, " x{}", v + self.offset)?,
                    _ => write!(f, " x{}^{p}", v + self.offset)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let sq = s.pow(2);
        let expect = &(&x.pow(2) + &y.pow(2)) + &(&x * &y).scale(&Laurent::from_int(2));
        assert_eq!(sq, expect);
        assert_eq!((&sq - &expect).len(), 0);
        assert_eq!((&x * &y).div_var(0), Some(y.clone()));
        assert_eq!(s.div_var(0), None);
        let sub = sq.substitute(&[y.clone(), x.clone()]);
        assert_eq!(sub, expect);
    }
}
