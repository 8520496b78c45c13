use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Laurent polynomial in `q` with exact rational coefficients.
///
/// Stored densely from the lowest exponent; both end coefficients are
/// nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent {
    lo: i32,
    c: Vec<Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { lo: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), e)
    }

    pub fn monomial(coeff: Rational, e: i32) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Laurent { lo: e, c: vec![coeff] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(k: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(k)))
    }

    /// `1 - q^e`.
    pub fn one_minus_q_pow(e: i32) -> Self {
        Self::one() - Self::q_pow(e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out += &Self::monomial(c, e);
        }
        out
    }

    fn trim(mut self) -> Self {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i32;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.lo)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.lo + self.c.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> Rational {
        let idx = e - self.lo;
        if idx < 0 || idx as usize >= self.c.len() {
            Rational::zero()
        } else {
            self.c[idx as usize].clone()
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i32, c))
    }

    /// Multiply by `q^e`.
    pub fn shift(mut self, e: i32) -> Self {
        if !self.is_zero() {
            self.lo += e;
        }
        self
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Laurent { lo: self.lo, c: self.c.iter().map(|x| x * r).collect() }
    }

    /// The substitution `q ↦ q^{-1}`.
    pub fn invert_q(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(hi) => Laurent { lo: -hi, c: self.c.iter().rev().cloned().collect() },
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation at a nonzero rational `q`.
    pub fn eval_rational(&self, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            acc += c * pow_rational(q, e);
        }
        acc
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.terms().map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * q.powi(e)).sum()
    }

    /// Exact quotient `self / d`, if `d` divides `self` in `ℚ[q, q^{-1}]`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let dlo = d.lo;
        let dlen = d.c.len() as i32;
        let dlead = d.c[0].clone();
        // divide from the low end; terminates once the remainder is shorter than d
        while !rem.is_zero() && rem.c.len() as i32 >= dlen {
            let coef = &rem.c[0] / &dlead;
            let e = rem.lo - dlo;
            let t = Self::monomial(coef, e);
            rem = &rem - &(&t * d);
            quot += &t;
        }
        rem.is_zero().then_some(quot)
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }
}

pub fn pow_rational(q: &Rational, e: i32) -> Rational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl From<i64> for Laurent {
    fn from(k: i64) -> Self {
        Laurent::from_int(k)
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;

    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut c = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] += x;
        }
        for (i, x) in rhs.c.iter().enumerate() {
            c[(rhs.lo - lo) as usize + i] += x;
        }
        Laurent { lo, c }.trim()
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;

    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;

    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Laurent { lo: self.lo + rhs.lo, c }.trim()
    }
}

impl Neg for &Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        Laurent { lo: self.lo, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        -&self
    }
}

impl Add for Laurent {
    type Output = Laurent;

    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for Laurent {
    type Output = Laurent;

    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;

    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let rhi = rhs.max_exp().unwrap();
        let shi = self.max_exp().unwrap();
        if rhs.lo >= self.lo && rhi <= shi {
            let off = (rhs.lo - self.lo) as usize;
            for (i, x) in rhs.c.iter().enumerate() {
                self.c[off + i] += x;
            }
            *self = std::mem::take(self).trim();
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        *self += &(-rhs);
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Laurent {
    type Err = crate::error::Error;

    /// Parses the output of `Display`: terms `c`, `q^e` or `c*q^e` joined by `+`/`-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::error::Error::Parse(format!("bad Laurent polynomial {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Laurent::zero());
        }
        let mut out = Laurent::zero();
        let mut sign = 1;
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let cut = rest.find(" + ").into_iter().chain(rest.find(" - ")).min();
            let (tok, next) = match cut {
                Some(i) => (&rest[..i], Some((&rest[i + 1..i + 2], &rest[i + 3..]))),
                None => (rest, None),
            };
            let (cs, es) = match tok.split_once("q^") {
                Some((c, e)) => (c.trim_end_matches('*'), e),
                None => (tok, "0"),
            };
            let c: Rational = if cs.is_empty() { Rational::one() } else { cs.parse().map_err(|_| bad())? };
            let e: i32 = es.parse().map_err(|_| bad())?;
            out += &Laurent::monomial(c * Rational::from_integer(sign.into()), e);
            match next {
                Some((op, r)) => {
                    sign = if op == "-" { -1 } else { 1 };
                    rest = r;
                }
                None => break,
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Laurent::one() - Laurent::q_pow(2);
        let b = Laurent::one() + Laurent::q_pow(2);
        assert_eq!(&a * &b, Laurent::one() - Laurent::q_pow(4));
        assert!((&a - &a).is_zero());
        assert_eq!(a.invert_q(), Laurent::one() - Laurent::q_pow(-2));
        assert_eq!((Laurent::one() - Laurent::q_pow(4)).div_exact(&a), Some(b.clone()));
        assert_eq!(b.div_exact(&Laurent::from_int(2) ), Some(b.scale(&Rational::new(1.into(), 2.into()))));
        assert_eq!(Laurent::q_pow(3).div_exact(&a), None);
    }

    #[test]
    fn evaluation() {
        let a = Laurent::from_terms([(-1, Rational::from_integer(2.into())), (2, Rational::one())]);
        let q = Rational::new(1.into(), 2.into());
        assert_eq!(a.eval_rational(&q), Rational::new(17.into(), 4.into()));
        assert!((a.eval_f64(0.5) - 4.25).abs() < 1e-15);
    }

    #[test]
    fn text_round_trip() {
        let a = Laurent::from_terms([
            (-1, Rational::from_integer((-2).into())),
            (0, Rational::one()),
            (3, Rational::new(3.into(), 2.into())),
        ]);
        let s = a.to_string();
        assert_eq!(s, "-2*q^-1 + 1 + 3/2*q^3");
        assert_eq!(s.parse::<Laurent>().unwrap(), a);
        assert_eq!("-q^2".parse::<Laurent>().unwrap(), -Laurent::q_pow(2));
    }
}
