use std::ops::{Add, Mul, Sub};

use super::{Laurent, Rational};

/// Polynomial in a commuting variable `t` with Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TPoly(Vec<Laurent>);

impl TPoly {
    pub fn new(mut coeffs: Vec<Laurent>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    pub fn zero() -> Self {
        TPoly(Vec::new())
    }

    pub fn one() -> Self {
        TPoly(vec![Laurent::one()])
    }

    pub fn t() -> Self {
        TPoly(vec![Laurent::zero(), Laurent::one()])
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Laurent {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Laurent] {
        &self.0
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(TPoly::one(), |acc, _| &acc * self)
    }

    /// Exact quotient by `t`; `None` if the constant term is nonzero.
    pub fn div_t(&self) -> Option<Self> {
        match self.0.first() {
            None => Some(TPoly::zero()),
            Some(c) if c.is_zero() => Some(TPoly(self.0[1..].to_vec())),
            Some(_) => None,
        }
    }

    /// The substitution `t ↦ q^e t`.
    pub fn scale_t(&self, e: i32) -> Self {
        TPoly::new(self.0.iter().enumerate().map(|(k, c)| c.clone().shift(e * k as i32)).collect())
    }

    pub fn eval_f64(&self, q: f64, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + c.eval_f64(q))
    }

    pub fn eval_rational(&self, q: &Rational, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::from_integer(0.into()), |acc, c| acc * t + c.eval_rational(q))
    }
}

impl<'a> Add<&'a TPoly> for &'a TPoly {
    type Output = TPoly;

    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.0.len().max(rhs.0.len());
        TPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a TPoly> for &'a TPoly {
    type Output = TPoly;

    fn sub(self, rhs: &TPoly) -> TPoly {
        let n = self.0.len().max(rhs.0.len());
        TPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a TPoly> for &'a TPoly {
    type Output = TPoly;

    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![Laurent::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        TPoly::new(out)
    }
}

impl std::fmt::Display for TPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c}) t")?,
                _ => write!(f, "({c}) t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
