//! Weight vectors and their classification.
//!
//! A weight vector `ℓ = (ℓ_0, …, ℓ_n)` has `n ≥ 1` and positive entries.
//! The sharp map sends `p` to the vector of products of all other entries,
//! and a weight vector is of *sharp type* when it is `p♯` for a pairwise
//! coprime `p`. Admissible moves multiply or divide all entries but one by a
//! prime; they preserve the isomorphism class of the associated algebra.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector(Vec<BigUint>);

impl WeightVector {
    pub fn new(entries: Vec<BigUint>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::precondition("a weight vector needs at least two entries"));
        }
        if entries.iter().any(|e| e.is_zero()) {
            return Err(Error::precondition("weights must be positive"));
        }
        Ok(WeightVector(entries))
    }

    pub fn from_u64(entries: &[u64]) -> Result<Self> {
        Self::new(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    /// `n`, one less than the number of entries.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Result<&BigUint> {
        self.0.get(i).ok_or(Error::Index { index: i, max: self.n() })
    }

    /// Entries as `u32`, for use as exponents.
    pub fn to_u32(&self) -> Result<Vec<u32>> {
        self.0
            .iter()
            .map(|e| e.to_u32().ok_or_else(|| Error::Capacity(format!("weight {e} exceeds u32"))))
            .collect()
    }

    /// `ℓ_{i:j} = ℓ_i / gcd(ℓ_i, ℓ_j)`.
    pub fn reduced(&self, i: usize, j: usize) -> Result<BigUint> {
        let (a, b) = (self.get(i)?, self.get(j)?);
        Ok(a / a.gcd(b))
    }

    pub fn gcd(&self) -> BigUint {
        self.0.iter().fold(BigUint::zero(), |g, e| g.gcd(e))
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd().is_one()
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        let v = &self.0;
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i].gcd(&v[j]).is_one()))
    }

    /// Every prime fails to divide at least two entries.
    pub fn is_normalized(&self) -> bool {
        let primes: HashSet<BigUint> = self.0.iter().flat_map(prime_factors).collect();
        primes
            .iter()
            .all(|p| self.0.iter().filter(|e| !(*e % p).is_zero()).count() >= 2)
    }

    /// Divide out the common factor of all entries.
    pub fn normalize(&self) -> WeightVector {
        let g = self.gcd();
        WeightVector(self.0.iter().map(|e| e / &g).collect())
    }

    pub fn permuted(&self, perm: &[usize]) -> Result<WeightVector> {
        if perm.len() != self.len() {
            return Err(Error::Dimension { expected: self.len(), got: perm.len() });
        }
        let mut seen = vec![false; perm.len()];
        for &i in perm {
            if i >= perm.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::precondition("not a permutation"));
            }
        }
        Ok(WeightVector(perm.iter().map(|&i| self.0[i].clone()).collect()))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = inner
            .split(',')
            .map(|t| t.trim().parse::<BigUint>().map_err(|_| Error::Parse(format!("bad weight {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        WeightVector::new(entries)
    }
}

/// A weight vector whose entries are pairwise coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairwiseCoprimeVector(WeightVector);

impl PairwiseCoprimeVector {
    pub fn new(w: WeightVector) -> Result<Self> {
        if !w.is_pairwise_coprime() {
            return Err(Error::precondition(format!("{w} is not pairwise coprime")));
        }
        Ok(PairwiseCoprimeVector(w))
    }

    pub fn from_u64(entries: &[u64]) -> Result<Self> {
        Self::new(WeightVector::from_u64(entries)?)
    }

    pub fn weights(&self) -> &WeightVector {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// Product of all entries.
    pub fn product(&self) -> BigUint {
        self.0.entries().iter().product()
    }
}

impl fmt::Display for PairwiseCoprimeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `(p♯)_i = ∏_{j≠i} p_j`.
pub fn sharp(p: &WeightVector) -> WeightVector {
    let e = p.entries();
    let out = (0..e.len())
        .map(|i| e.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x).product())
        .collect();
    WeightVector(out)
}

/// `ℓ = p♯` as machine integers, for a pairwise coprime `p`.
pub fn lens_weights(p: &[u32]) -> Result<Vec<i64>> {
    if p.len() < 2 || p.contains(&0) {
        return Err(Error::precondition(format!("{p:?} needs at least two positive weights")));
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if num_integer::gcd(p[i], p[j]) != 1 {
                return Err(Error::precondition(format!("{p:?} is not pairwise coprime")));
            }
        }
    }
    (0..p.len())
        .map(|i| {
            p.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .try_fold(1i64, |acc, (_, &x)| acc.checked_mul(x as i64))
                .ok_or_else(|| Error::Capacity(format!("sharp of {p:?}")))
        })
        .collect()
}

/// Every pairwise coprime `p` of the given length with entries in `1..=max`,
/// in lexicographic order.
pub fn pairwise_coprime_vectors(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (1..=max)
                    .filter(|&x| v.iter().all(|&y| num_integer::gcd(x, y) == 1))
                    .map(|x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Recover `p` with `p♯ = ℓ` and `p` pairwise coprime, if one exists.
///
/// The candidate is `p_j = ℓ_{i:j}` with `i = j + 1 mod (n + 1)`; it is
/// accepted only after checking `sharp(p) = ℓ`.
pub fn factor_sharp(l: &WeightVector) -> Result<Option<PairwiseCoprimeVector>> {
    if !l.is_coprime() {
        return Err(Error::precondition(format!("{l} is not coprime")));
    }
    let len = l.len();
    let cand = (0..len)
        .map(|j| l.reduced((j + 1) % len, j))
        .collect::<Result<Vec<_>>>()?;
    let p = WeightVector(cand);
    if p.is_pairwise_coprime() && sharp(&p) == *l {
        Ok(Some(PairwiseCoprimeVector(p)))
    } else {
        Ok(None)
    }
}

/// Whether the algebra of `ℓ` is isomorphic to a quantum complex projective space.
pub fn is_cpn(l: &WeightVector) -> Result<bool> {
    Ok(factor_sharp(l)?.is_some())
}

pub fn is_prime(p: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *p < two {
        return false;
    }
    let mut d = two;
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 1u32;
    }
    true
}

/// Distinct prime factors, by trial division.
pub fn prime_factors(x: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut x = x.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= x {
        if (&x % &d).is_zero() {
            out.push(d.clone());
            while (&x % &d).is_zero() {
                x /= &d;
            }
        }
        d += 1u32;
    }
    if x > BigUint::one() {
        out.push(x);
    }
    out
}

fn omega(x: &BigUint) -> usize {
    let mut x = x.clone();
    let mut count = 0;
    for p in prime_factors(&x.clone()) {
        while (&x % &p).is_zero() {
            x /= &p;
            count += 1;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// `M_k(p)`: multiply every entry except the `k`-th by `p`.
    Mul { k: usize, p: BigUint },
    /// `D_k(p)`: divide every entry except the `k`-th by `p`.
    Div { k: usize, p: BigUint },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Mul { k, p } => write!(f, "M_{k}({p})"),
            Move::Div { k, p } => write!(f, "D_{k}({p})"),
        }
    }
}

fn check_move(l: &WeightVector, k: usize, p: &BigUint) -> Result<()> {
    if k > l.n() {
        return Err(Error::Index { index: k, max: l.n() });
    }
    if !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    Ok(())
}

/// Apply `M_k(p)`; `Ok(None)` when the move is not admissible (`p | ℓ_k`).
pub fn admissible_mul(l: &WeightVector, k: usize, p: &BigUint) -> Result<Option<WeightVector>> {
    check_move(l, k, p)?;
    if (&l.0[k] % p).is_zero() {
        return Ok(None);
    }
    let out = l.0.iter().enumerate().map(|(i, e)| if i == k { e.clone() } else { e * p }).collect();
    Ok(Some(WeightVector(out)))
}

/// Apply `D_k(p)`; `Ok(None)` unless `p` divides every entry but `ℓ_k`.
pub fn admissible_div(l: &WeightVector, k: usize, p: &BigUint) -> Result<Option<WeightVector>> {
    check_move(l, k, p)?;
    let ok = l.0.iter().enumerate().all(|(i, e)| (e % p).is_zero() != (i == k));
    if !ok {
        return Ok(None);
    }
    let out = l.0.iter().enumerate().map(|(i, e)| if i == k { e.clone() } else { e / p }).collect();
    Ok(Some(WeightVector(out)))
}

pub fn apply_move(l: &WeightVector, m: &Move) -> Result<Option<WeightVector>> {
    match m {
        Move::Mul { k, p } => admissible_mul(l, *k, p),
        Move::Div { k, p } => admissible_div(l, *k, p),
    }
}

/// Shortest sequence of admissible moves from `l` to `(1, …, 1)`.
///
/// Breadth-first search over moves by primes dividing some entry of `l`,
/// never exceeding the total number of prime factors of `l`.
pub fn path_to_trivial(l: &WeightVector) -> Option<Vec<Move>> {
    let target = WeightVector(vec![BigUint::one(); l.len()]);
    let budget: usize = l.0.iter().map(omega).sum();
    let primes: Vec<BigUint> = {
        let set: HashSet<BigUint> = l.0.iter().flat_map(prime_factors).collect();
        let mut v: Vec<_> = set.into_iter().collect();
        v.sort();
        v
    };
    let mut prev: HashMap<WeightVector, Option<(WeightVector, Move)>> = HashMap::new();
    prev.insert(l.clone(), None);
    let mut queue = VecDeque::from([l.clone()]);
    while let Some(cur) = queue.pop_front() {
        if cur == target {
            let mut path = Vec::new();
            let mut at = cur;
            while let Some(Some((from, mv))) = prev.get(&at).cloned() {
                path.push(mv);
                at = from;
            }
            path.reverse();
            return Some(path);
        }
        for k in 0..cur.len() {
            for p in &primes {
                for mv in [Move::Div { k, p: p.clone() }, Move::Mul { k, p: p.clone() }] {
                    let Ok(Some(next)) = apply_move(&cur, &mv) else { continue };
                    if next.0.iter().map(omega).sum::<usize>() > budget || prev.contains_key(&next) {
                        continue;
                    }
                    prev.insert(next.clone(), Some((cur.clone(), mv)));
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::from_u64(v).unwrap()
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp(&w(&[2, 1, 1])), w(&[1, 2, 2]));
        assert_eq!(sharp(&w(&[2, 3, 5])), w(&[15, 10, 6]));
    }

    #[test]
    fn factor_examples() {
        let p = factor_sharp(&w(&[1, 2, 2])).unwrap().unwrap();
        assert_eq!(p.weights(), &w(&[2, 1, 1]));
        assert!(factor_sharp(&w(&[1, 2, 3])).unwrap().is_none());
        assert_eq!(factor_sharp(&w(&[1, 1])).unwrap().unwrap().weights(), &w(&[1, 1]));
        assert!(factor_sharp(&w(&[2, 4])).is_err());
    }

    #[test]
    fn cpn_examples() {
        assert!(is_cpn(&w(&[1, 2, 2])).unwrap());
        assert!(is_cpn(&w(&[2, 3, 6])).unwrap());
        assert!(!is_cpn(&w(&[1, 1, 2])).unwrap());
    }

    #[test]
    fn moves() {
        let three = BigUint::from(3u32);
        let two = BigUint::from(2u32);
        assert_eq!(admissible_mul(&w(&[1, 2, 2]), 0, &three).unwrap(), Some(w(&[1, 6, 6])));
        assert_eq!(admissible_mul(&w(&[1, 1, 2]), 2, &two).unwrap(), None);
        assert_eq!(admissible_div(&w(&[1, 2, 2]), 0, &two).unwrap(), Some(w(&[1, 1, 1])));
        assert!(admissible_mul(&w(&[1, 1, 2]), 0, &BigUint::from(4u32)).is_err());
    }

    #[test]
    fn reachability_matches_sharp_type() {
        for v in [[1u64, 2, 2], [2, 3, 6], [15, 10, 6], [1, 1, 2], [1, 2, 3], [3, 3, 1]] {
            let l = w(&v);
            if l.is_coprime() {
                assert_eq!(path_to_trivial(&l).is_some(), is_cpn(&l).unwrap(), "{l}");
            }
        }
        let path = path_to_trivial(&w(&[15, 10, 6])).unwrap();
        let mut cur = w(&[15, 10, 6]);
        for m in &path {
            cur = apply_move(&cur, m).unwrap().unwrap();
        }
        assert_eq!(cur, w(&[1, 1, 1]));
    }

    #[test]
    fn predicates() {
        assert!(w(&[1, 1]).is_normalized());
        assert!(!w(&[1, 2]).is_normalized());
        assert!(w(&[1, 1, 6]).is_normalized());
        assert!(!w(&[1, 2, 2]).is_normalized());
        assert!(w(&[2, 3, 5]).is_normalized());
        assert!(!w(&[2, 4]).is_coprime());
        assert_eq!(w(&[2, 4, 6]).normalize(), w(&[1, 2, 3]));
        assert_eq!("(1, 2,3)".parse::<WeightVector>().unwrap(), w(&[1, 2, 3]));
    }
}
