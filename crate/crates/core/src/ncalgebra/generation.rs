//! Whether the degree-zero part is generated by the `ξ_{i,j}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::{factor_sharp, PairwiseCoprimeVector, WeightVector};

use super::monomial::Monomial;

/// `(r, s)` with `a r + b s = k gcd(a, b)`, both nonzero and of opposite sign.
///
/// Takes the representative of `r` in `[-b/g, -1]`, which forces `s > 0`.
pub fn bezout_opposite_sign(a: &BigInt, b: &BigInt, k: &BigInt) -> Result<(BigInt, BigInt)> {
    if !a.is_positive() || !b.is_positive() || !k.is_positive() {
        return Err(Error::precondition("bezout needs positive a, b, k"));
    }
    let ext = a.extended_gcd(b);
    let g = ext.gcd;
    let step = b / &g;
    let r0 = k * &ext.x;
    let mut r = r0.mod_floor(&step);
    if r.is_zero() {
        r = -step;
    } else {
        r -= &step;
    }
    let s = (k * &g - a * &r) / b;
    debug_assert_eq!(a * &r + b * &s, k * &g);
    Ok((r, s))
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    /// Indices `(i, j, k)` with `ℓ_{i:j} ∤ ℓ_k`.
    pub triple: (usize, usize, usize),
    pub r: i64,
    pub s: i64,
    /// Exponent vector `c` of the monomial `z^c` (negative entries are adjoints).
    pub exponents: Vec<i64>,
    pub monomial: String,
    pub grade: i64,
}

#[derive(Clone, Debug)]
pub enum Generation {
    Generated(PairwiseCoprimeVector),
    NotGenerated(Certificate),
}

impl Generation {
    pub fn is_generated(&self) -> bool {
        matches!(self, Generation::Generated(_))
    }
}

/// Either the factorisation `ℓ = p♯`, or a grade-zero monomial of length
/// three built from a triple with `ℓ_{i:j} ∤ ℓ_k`.
pub fn generation_test(l: &WeightVector) -> Result<Generation> {
    if let Some(p) = factor_sharp(l)? {
        return Ok(Generation::Generated(p));
    }
    let len = l.len();
    let e: Vec<BigInt> = l.entries().iter().map(|x| BigInt::from(x.clone())).collect();
    for i in 0..len {
        for j in (0..len).filter(|&j| j != i) {
            for k in (0..len).filter(|&k| k != i && k != j) {
                let lij = &e[i] / e[i].gcd(&e[j]);
                if (&e[k] % &lij).is_zero() {
                    continue;
                }
                let (r, s) = bezout_opposite_sign(&e[i], &e[k], &e[j])?;
                let g = e[i].gcd(&e[k]);
                let small = |x: &BigInt| x.to_i64().ok_or_else(|| Error::Capacity(x.to_string()));
                let mut c = vec![0i64; len];
                c[i] = -small(&r)?;
                c[j] = small(&g)?;
                c[k] = -small(&s)?;
                let weights: Vec<i64> = e.iter().map(small).collect::<Result<_>>()?;
                let m = Monomial::from_signed(&c);
                let grade = m.grade(&weights);
                return Ok(Generation::NotGenerated(Certificate {
                    triple: (i, j, k),
                    r: c[i].wrapping_neg(),
                    s: c[k].wrapping_neg(),
                    exponents: c,
                    monomial: m.to_string(),
                    grade,
                }));
            }
        }
    }
    Err(Error::Verification(format!("{l} is not of sharp type but no witness triple was found")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn bezout_examples() {
        for (a, b, k) in [(2, 2, 1), (1, 3, 2), (2, 3, 1), (6, 10, 7), (5, 1, 3)] {
            let (r, s) = bezout_opposite_sign(&bi(a), &bi(b), &bi(k)).unwrap();
            assert_eq!(&r * a + &s * b, bi(k * num_integer::gcd(a, b)));
            assert!(r.is_negative() && s.is_positive());
        }
    }

    #[test]
    fn certificate_for_123() {
        let l = WeightVector::from_u64(&[1, 2, 3]).unwrap();
        let Generation::NotGenerated(c) = generation_test(&l).unwrap() else { panic!() };
        assert_eq!(c.monomial, "z0 z1 z2*");
        assert_eq!(c.grade, 0);
        assert_eq!(c.exponents.iter().map(|x| x.unsigned_abs()).sum::<u64>(), 3);
        assert!(generation_test(&WeightVector::from_u64(&[1, 2, 2]).unwrap()).unwrap().is_generated());
    }
}
