//! Exact `q`-arithmetic: Laurent polynomials in `q`, symmetric `q`-integers,
//! `q`-binomials, shifted factorials, and polynomials in an auxiliary
//! variable `t` with Laurent coefficients.

mod laurent;
mod tpoly;

pub use laurent::{pow_rational, Laurent, Rational};
pub use tpoly::TPoly;

use crate::error::{Error, Result};

/// `[k] = q^{k-1} + q^{k-3} + … + q^{1-k}`.
pub fn q_int(k: u32) -> Laurent {
    let k = k as i32;
    Laurent::from_terms((0..k).map(|j| (k - 1 - 2 * j, Rational::from_integer(1.into()))))
}

/// `[k]! = [1][2]⋯[k]`.
pub fn q_factorial(k: u32) -> Laurent {
    (1..=k).fold(Laurent::one(), |acc, j| &acc * &q_int(j))
}

/// Symmetric `q`-binomial, by the recursion
/// `[m k] = q^{-k} [m-1 k] + q^{m-k} [m-1 k-1]`.
pub fn q_binomial(m: u32, k: u32) -> Result<Laurent> {
    if k > m {
        return Err(Error::precondition(format!("q-binomial needs k <= m, got m={m}, k={k}")));
    }
    let mut row = vec![Laurent::one()];
    for mm in 1..=m {
        let mut next = Vec::with_capacity(row.len() + 1);
        for kk in 0..=mm {
            let mut v = Laurent::zero();
            if kk < mm {
                v += &row[kk as usize].clone().shift(-(kk as i32));
            }
            if kk > 0 {
                v += &row[kk as usize - 1].clone().shift((mm - kk) as i32);
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row.swap_remove(k as usize))
}

/// `{m k} = (1 - q^{2k+2})(1 - q^{2k+4})⋯(1 - q^{2m})`, the empty product when `k = m`.
pub fn q_shifted(m: u32, k: u32) -> Result<Laurent> {
    if k > m {
        return Err(Error::precondition(format!("shifted factorial needs k <= m, got m={m}, k={k}")));
    }
    Ok((k + 1..=m).fold(Laurent::one(), |acc, j| &acc * &Laurent::one_minus_q_pow(2 * j as i32)))
}

/// `f_{p0}(t) = Σ_k [p0 k] q^{-k(p0-1)} (-t)^k`, equal to `∏_{k<p0} (1 - q^{-2k} t)`.
pub fn f_poly(p0: u32) -> TPoly {
    let coeffs = (0..=p0)
        .map(|k| {
            let b = q_binomial(p0, k).expect("k <= p0");
            let b = b.shift(-(k as i32) * (p0 as i32 - 1));
            if k % 2 == 1 {
                -b
            } else {
                b
            }
        })
        .collect();
    TPoly::new(coeffs)
}

/// `∏_{k<p0} (1 - q^{-2k} t)`, the product side of the `f` identity.
pub fn f_product(p0: u32) -> TPoly {
    (0..p0).fold(TPoly::one(), |acc, k| {
        &acc * &TPoly::new(vec![Laurent::one(), -Laurent::q_pow(-2 * k as i32)])
    })
}

/// `∏_{l<m} (1 + q^{2l} t)`.
pub fn binomial_generating_product(m: u32) -> TPoly {
    (0..m).fold(TPoly::one(), |acc, l| {
        &acc * &TPoly::new(vec![Laurent::one(), Laurent::q_pow(2 * l as i32)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!(q_int(0).is_zero());
        assert_eq!(q_int(3).to_string(), "q^-2 + 1 + q^2");
        assert_eq!(q_binomial(2, 1).unwrap(), q_int(2));
        assert_eq!(q_binomial(4, 2).unwrap().to_string(), "q^-4 + q^-2 + 2 + q^2 + q^4");
        assert!(q_binomial(2, 3).is_err());
        assert!(q_shifted(3, 3).unwrap().is_one());
        assert_eq!(
            q_shifted(2, 0).unwrap(),
            &Laurent::one_minus_q_pow(2) * &Laurent::one_minus_q_pow(4)
        );
        assert!(f_poly(0).is_one());
    }

    #[test]
    fn binomial_matches_factorial_quotient() {
        for m in 0..=8 {
            for k in 0..=m {
                let den = &q_factorial(k) * &q_factorial(m - k);
                assert_eq!(q_factorial(m).div_exact(&den), Some(q_binomial(m, k).unwrap()));
            }
        }
    }

    #[test]
    fn generating_identity() {
        for m in 0..=8u32 {
            let prod = binomial_generating_product(m);
            for k in 0..=m {
                let expect = q_binomial(m, k).unwrap().shift(k as i32 * (m as i32 - 1));
                assert_eq!(prod.coeff(k as usize), expect, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn f_identity() {
        for p0 in 0..=6 {
            assert_eq!(f_poly(p0), f_product(p0));
        }
    }
}
