use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A generator `z_i` or its adjoint `z_i*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub index: usize,
    pub star: bool,
}

impl Gen {
    pub fn z(index: usize) -> Self {
        Gen { index, star: false }
    }

    pub fn zs(index: usize) -> Self {
        Gen { index, star: true }
    }

    pub fn adjoint(self) -> Self {
        Gen { index: self.index, star: !self.star }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}", self.index, if self.star { "*" } else { "" })
    }
}

/// Normal monomial `z_0^{j_0} (z_0*)^{k_0} z_1^{j_1} (z_1*)^{k_1} ⋯ z_n^{j_n} (z_n*)^{k_n}`
/// with `min(j_0, k_0) = 0`.
///
/// Stored as `[j_0, k_0, j_1, k_1, …]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, 2 * (n + 1)))
    }

    /// Build from block exponents; fails if both `j_0` and `k_0` are positive.
    pub fn new(j: &[u32], k: &[u32]) -> Result<Self> {
        if j.len() != k.len() || j.len() < 2 {
            return Err(Error::Dimension { expected: j.len().max(2), got: k.len() });
        }
        if j[0] > 0 && k[0] > 0 {
            return Err(Error::precondition("z_0 and z_0* cannot both occur in a normal monomial"));
        }
        Ok(Monomial(j.iter().zip(k).flat_map(|(&a, &b)| [a, b]).collect()))
    }

    /// The monomial `z^c` for `c ∈ ℤ^{n+1}`, negative entries meaning adjoints.
    pub fn from_signed(c: &[i64]) -> Self {
        let mut m = Monomial::one(c.len() - 1);
        for (i, &e) in c.iter().enumerate() {
            if e >= 0 {
                m.0[2 * i] = e as u32;
            } else {
                m.0[2 * i + 1] = e.unsigned_abs() as u32;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.0.len() / 2 - 1
    }

    pub fn j(&self, i: usize) -> u32 {
        self.0[2 * i]
    }

    pub fn k(&self, i: usize) -> u32 {
        self.0[2 * i + 1]
    }

    pub(crate) fn set(&mut self, i: usize, j: u32, k: u32) {
        self.0[2 * i] = j;
        self.0[2 * i + 1] = k;
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Letters of the canonical word, left to right.
    pub fn letters(&self) -> Vec<Gen> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for i in 0..=self.n() {
            out.extend(std::iter::repeat_n(Gen::z(i), self.j(i) as usize));
            out.extend(std::iter::repeat_n(Gen::zs(i), self.k(i) as usize));
        }
        out
    }

    /// Split off the last letter of the canonical word.
    pub fn split_last(&self) -> Option<(Monomial, Gen)> {
        let i = (0..=self.n()).rev().find(|&i| self.j(i) + self.k(i) > 0)?;
        let mut m = self.clone();
        if self.k(i) > 0 {
            m.0[2 * i + 1] -= 1;
            Some((m, Gen::zs(i)))
        } else {
            m.0[2 * i] -= 1;
            Some((m, Gen::z(i)))
        }
    }

    /// `Σ_i (j_i - k_i) ℓ_i`.
    pub fn grade(&self, l: &[i64]) -> i64 {
        (0..=self.n()).map(|i| (self.j(i) as i64 - self.k(i) as i64) * l[i]).sum()
    }

    /// `j_i - k_i` for every index.
    pub fn charge(&self) -> Vec<i64> {
        (0..=self.n()).map(|i| self.j(i) as i64 - self.k(i) as i64).collect()
    }

    /// Whether the monomial involves only indices `≤ h`.
    pub fn supported_below(&self, h: usize) -> bool {
        (h + 1..=self.n()).all(|i| self.j(i) + self.k(i) == 0)
    }

    /// Whether `j_i = k_i` for all `i`.
    pub fn is_diagonal(&self) -> bool {
        (0..=self.n()).all(|i| self.j(i) == self.k(i))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..=self.n() {
            for (e, star) in [(self.j(i), ""), (self.k(i), "*")] {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "z{i}{star}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parse a word such as `z0 z1*^2 z2` into letters.
pub fn parse_word(s: &str) -> Result<Vec<Gen>> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let bad = || Error::Parse(format!("bad letter {tok:?}"));
        let body = tok.strip_prefix('z').ok_or_else(bad)?;
        let (body, pow) = match body.split_once('^') {
            Some((b, p)) => (b, p.parse::<usize>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let (idx, star) = match body.strip_suffix('*') {
            Some(b) => (b, true),
            None => (body, false),
        };
        let index = idx.parse::<usize>().map_err(|_| bad())?;
        out.extend(std::iter::repeat_n(Gen { index, star }, pow));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_display() {
        let m = Monomial::new(&[0, 2, 0], &[1, 1, 3]).unwrap();
        assert_eq!(m.to_string(), "z0* z1^2 z1* z2*^3");
        assert_eq!(m.letters().len(), 7);
        assert_eq!(parse_word("z0* z1^2 z1* z2*^3").unwrap(), m.letters());
        let (pre, g) = m.split_last().unwrap();
        assert_eq!(g, Gen::zs(2));
        assert_eq!(pre.k(2), 2);
        assert!(Monomial::new(&[1, 0], &[1, 0]).is_err());
        assert_eq!(m.grade(&[1, 2, 3]), -1 + 2 - 9);
        assert_eq!(Monomial::from_signed(&[1, 1, -1]).to_string(), "z0 z1 z2*");
    }
}
