//! Coefficients `a_i`, `b_i` with `Σ a_i ζ_i ζ_i* = 1` and `Σ b_i ζ_i* ζ_i = 1`.
//!
//! All products `ζ_i ζ_i*`, `ζ_i* ζ_i` lie in the commutative subalgebra
//! generated by the `x_i`, so the coefficients are computed as polynomials
//! in `x_1, …, x_n` (with `x_0 = 1 - Σ_{j≥1} x_j`).
//!
//! Starting from `Σ_j c_j w_j = 1`, where `w_j` is `x_j` (resp. `z_j* z_j`),
//! step `k` raises the current identity to the power `p_k` and regroups the
//! multinomial expansion: a term is attributed to the first index `i < k`
//! it contains, else it is the pure power `w_k^{p_k}` (rewritten through
//! the product formula for `ζ_k ζ_k*`), else it is attributed to the first
//! index `i > k`, keeping its power of `w_k` in the coefficient.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::qarith::{f_poly, Laurent, TPoly};

use super::element::Element;
use super::lens::{zeta, zeta_star, XEmbedding};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Σ a_i ζ_i ζ_i* = 1`.
    A,
    /// `Σ b_i ζ_i* ζ_i = 1`.
    B,
}

/// Polynomial ring in `x_1, …, x_n` used for the coefficients.
pub struct XRing {
    pub n: usize,
}

impl XRing {
    pub fn new(n: usize) -> Self {
        XRing { n }
    }

    /// `x_i`, with `x_0 = 1 - Σ_{j≥1} x_j`.
    pub fn x(&self, i: usize) -> Poly {
        if i == 0 {
            (1..=self.n).fold(Poly::one(self.n), |acc, j| &acc - &Poly::var(self.n, j - 1))
        } else {
            Poly::var(self.n, i - 1)
        }
    }

    /// `X_i = Σ_{j>i} x_j`.
    pub fn big_x(&self, i: usize) -> Poly {
        (i + 1..=self.n).fold(Poly::zero(self.n), |acc, j| &acc + &self.x(j))
    }

    /// `ζ_i ζ_i* = ∏_{k<p_i} {x_i + (1 - q^{-2k}) X_i}`.
    pub fn zeta_zetastar(&self, i: usize, pi: u32) -> Poly {
        let (x, bx) = (self.x(i), self.big_x(i));
        (0..pi as i32).fold(Poly::one(self.n), |acc, k| &acc * &(&x + &bx.scale(&Laurent::one_minus_q_pow(-2 * k))))
    }

    /// `ζ_i* ζ_i = ∏_{1≤k≤p_i} {x_i + (1 - q^{2k}) X_i}`.
    pub fn zetastar_zeta(&self, i: usize, pi: u32) -> Poly {
        let (x, bx) = (self.x(i), self.big_x(i));
        (1..=pi as i32).fold(Poly::one(self.n), |acc, k| &acc * &(&x + &bx.scale(&Laurent::one_minus_q_pow(2 * k))))
    }

    /// `t ↦ poly(t)` for a polynomial in one variable.
    pub fn eval_tpoly(&self, f: &TPoly, t: &Poly) -> Poly {
        f.coeffs().iter().rev().fold(Poly::zero(self.n), |acc, c| &(&acc * t) + &Poly::constant(self.n, c.clone()))
    }
}

/// Expansion `∏_s (u + c_s v) = u^p + v R(u, v)`; returns `R` in variables `(u, v)`.
fn product_remainder(consts: &[Laurent]) -> Poly {
    let u = Poly::var(2, 0);
    let v = Poly::var(2, 1);
    let prod = consts.iter().fold(Poly::one(2), |acc, c| &acc * &(&u + &v.scale(c)));
    let rest = &prod - &u.pow(consts.len() as u32);
    rest.div_var(1).expect("every non-leading term contains v")
}

struct Setup {
    base: Vec<Poly>,
    w: Vec<Poly>,
    target: Vec<Poly>,
    /// `r[k][j]` with `w_k^{p_k} = target_k - Σ_{j>k} r[k][j] w_j`.
    r: Vec<Vec<Poly>>,
}

fn setup(p: &[u32], side: Side) -> Setup {
    let n = p.len() - 1;
    let ring = XRing::new(n);
    let mut base = Vec::new();
    let mut w = Vec::new();
    let mut target = Vec::new();
    let mut r = Vec::new();
    for k in 0..=n {
        let bx = ring.big_x(k);
        match side {
            Side::A => {
                base.push(Poly::one(n));
                w.push(ring.x(k));
                target.push(ring.zeta_zetastar(k, p[k]));
                let consts: Vec<Laurent> = (0..p[k] as i32).map(|s| Laurent::one_minus_q_pow(-2 * s)).collect();
                let rem = product_remainder(&consts).substitute(&[ring.x(k), bx.clone()]);
                r.push((0..=n).map(|j| if j > k { rem.clone() } else { Poly::zero(n) }).collect());
            }
            Side::B => {
                base.push(Poly::constant(n, Laurent::q_pow(2 * k as i32)));
                let wk = &ring.x(k) + &bx.scale(&Laurent::one_minus_q_pow(2));
                target.push(ring.zetastar_zeta(k, p[k]));
                // x_k + (1 - q^{2s}) X_k = w_k + (q² - q^{2s}) X_k
                let consts: Vec<Laurent> =
                    (1..=p[k] as i32).map(|s| Laurent::q_pow(2) - Laurent::q_pow(2 * s)).collect();
                let rem = product_remainder(&consts).substitute(&[wk.clone(), bx.clone()]);
                // X_k = Σ_{j>k} q^{2(j-k-1)} w_j
                r.push(
                    (0..=n)
                        .map(|j| if j > k { rem.scale(&Laurent::q_pow(2 * (j - k - 1) as i32)) } else { Poly::zero(n) })
                        .collect(),
                );
                w.push(wk);
            }
        }
    }
    Setup { base, w, target, r }
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(k: u32) -> u128 {
    (1..=k as u128).product()
}

fn powers(x: &Poly, upto: u32) -> Vec<Poly> {
    let mut v = vec![Poly::one(x.nvars())];
    for _ in 0..upto {
        let next = v.last().unwrap() * x;
        v.push(next);
    }
    v
}

/// Coefficients from the step-by-step multinomial construction.
pub fn connection_coeffs(p: &[u32], side: Side) -> Vec<Poly> {
    let n = p.len() - 1;
    let st = setup(p, side);
    let mut c = st.base.clone();
    for k in 0..=n {
        let pk = p[k];
        let y: Vec<Poly> = (0..=n).map(|j| if j < k { st.target[j].clone() } else { st.w[j].clone() }).collect();
        let ypow: Vec<Vec<Poly>> = y.iter().map(|yj| powers(yj, pk)).collect();
        let cpow: Vec<Vec<Poly>> = c.iter().map(|cj| powers(cj, pk)).collect();
        let mut next = vec![Poly::zero(n); n + 1];
        for s in compositions(pk, n + 1) {
            let multinom = factorial(pk) / s.iter().map(|&x| factorial(x)).product::<u128>();
            let coef = (0..=n).fold(Poly::constant(n, Laurent::from_int(multinom as i64)), |acc, j| {
                &acc * &cpow[j][s[j] as usize]
            });
            if s[k] == pk {
                next[k] = &next[k] + &coef;
                for j in k + 1..=n {
                    next[j] = &next[j] - &(&coef * &st.r[k][j]);
                }
                continue;
            }
            let i = (0..k).find(|&j| s[j] > 0).or_else(|| (k + 1..=n).find(|&j| s[j] > 0)).expect("nonempty");
            let mono = (0..=n).fold(Poly::one(n), |acc, j| {
                let e = if j == i { s[j] - 1 } else { s[j] };
                &acc * &ypow[j][e as usize]
            });
            next[i] = &next[i] + &(&coef * &mono);
        }
        c = next;
    }
    c
}

/// `a_0, …, a_n`, verified in the sphere algebra before returning.
pub fn connection_coeffs_a(p: &[u32]) -> Result<Vec<Poly>> {
    checked(p, Side::A)
}

/// `b_0, …, b_n`, verified in the sphere algebra before returning.
pub fn connection_coeffs_b(p: &[u32]) -> Result<Vec<Poly>> {
    checked(p, Side::B)
}

fn checked(p: &[u32], side: Side) -> Result<Vec<Poly>> {
    if p.len() < 2 || p.contains(&0) {
        return Err(Error::precondition("need at least two positive weights"));
    }
    let c = connection_coeffs(p, side);
    if !verify_coeffs(p, &c, side) {
        return Err(Error::Verification(format!("coefficients for {p:?} ({side:?}) do not sum to 1")));
    }
    Ok(c)
}

/// For `n = 1`: `a_0 = Σ_{k≥1} C(p_1,k) f^{k-1} (1-f)^{p_1-k}`, `a_1 = ((1-f)/x_1)^{p_1}`
/// with `f = f_{p_0}(x_1)`.
pub fn coeffs_n1_closed(p0: u32, p1: u32) -> Vec<Poly> {
    let ring = XRing::new(1);
    let f = ring.eval_tpoly(&f_poly(p0), &ring.x(1));
    let one_minus = &Poly::one(1) - &f;
    let mut a0 = Poly::zero(1);
    for k in 1..=p1 {
        let binom = (factorial(p1) / (factorial(k) * factorial(p1 - k))) as i64;
        a0 = &a0 + &(&f.pow(k - 1) * &one_minus.pow(p1 - k)).scale(&Laurent::from_int(binom));
    }
    let a1 = one_minus.div_var(0).expect("f(0) = 1").pow(p1);
    vec![a0, a1]
}

/// For `p = (1, …, 1, p_n)`: `a_n = 1`, `a_i = Σ_{k<p_n} x_n^k`.
pub fn coeffs_last_weight_closed(p: &[u32]) -> Vec<Poly> {
    let n = p.len() - 1;
    let ring = XRing::new(n);
    let geo = (0..p[n]).fold(Poly::zero(n), |acc, k| &acc + &ring.x(n).pow(k));
    (0..=n).map(|i| if i == n { Poly::one(n) } else { geo.clone() }).collect()
}

/// For `p = (p_0, 1, …, 1)`: `a_0 = 1`, `a_i = (1 - f(t))/t` with `t = x_1 + … + x_n`.
pub fn coeffs_first_weight_closed(p: &[u32]) -> Vec<Poly> {
    let n = p.len() - 1;
    let f = f_poly(p[0]);
    let quot = (&TPoly::one() - &f).div_t().expect("f(0) = 1");
    let ring = XRing::new(n);
    let t = ring.big_x(0);
    let other = ring.eval_tpoly(&quot, &t);
    (0..=n).map(|i| if i == 0 { Poly::one(n) } else { other.clone() }).collect()
}

/// `Σ c_i ζ_i ζ_i*` (side A) or `Σ c_i ζ_i* ζ_i` (side B) in the commutative ring.
pub fn identity_poly(p: &[u32], c: &[Poly], side: Side) -> Poly {
    let ring = XRing::new(p.len() - 1);
    (0..p.len()).fold(Poly::zero(ring.n), |acc, i| {
        let t = match side {
            Side::A => ring.zeta_zetastar(i, p[i]),
            Side::B => ring.zetastar_zeta(i, p[i]),
        };
        &acc + &(&c[i] * &t)
    })
}

/// The coefficients embedded in the sphere algebra.
pub fn embed_coeffs(n: usize, c: &[Poly]) -> Vec<Element> {
    let mut emb = XEmbedding::new(n);
    c.iter().map(|a| emb.embed(a)).collect()
}

/// `Σ c_i ζ_i ζ_i*` (or `Σ c_i ζ_i* ζ_i`) computed in the normal form engine.
pub fn identity_element(p: &[u32], c: &[Poly], side: Side) -> Element {
    let n = p.len() - 1;
    let emb = embed_coeffs(n, c);
    (0..=n).fold(Element::zero(n), |acc, i| {
        let prod = match side {
            Side::A => &zeta(n, p, i) * &zeta_star(n, p, i),
            Side::B => &zeta_star(n, p, i) * &zeta(n, p, i),
        };
        &acc + &(&emb[i] * &prod)
    })
}

/// Exact check of the defining identity in the sphere algebra.
pub fn verify_coeffs(p: &[u32], c: &[Poly], side: Side) -> bool {
    identity_element(p, c, side).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_satisfies_identity() {
        for p in [vec![1u32, 2], vec![2, 3], vec![3, 1], vec![2, 1, 3], vec![1, 1, 2]] {
            for side in [Side::A, Side::B] {
                let c = connection_coeffs(&p, side);
                assert!(identity_poly(&p, &c, side).is_one(), "{p:?} {side:?}");
                assert!(verify_coeffs(&p, &c, side), "{p:?} {side:?}");
            }
        }
    }

    #[test]
    fn closed_forms() {
        for (p0, p1) in [(1, 2), (2, 3), (3, 4)] {
            let c = coeffs_n1_closed(p0, p1);
            assert!(verify_coeffs(&[p0, p1], &c, Side::A));
        }
        for p in [vec![1u32, 3], vec![1, 1, 3], vec![1, 1, 1, 2]] {
            assert!(verify_coeffs(&p, &coeffs_last_weight_closed(&p), Side::A));
        }
        for p in [vec![3u32, 1], vec![2, 1, 1], vec![3, 1, 1]] {
            assert!(verify_coeffs(&p, &coeffs_first_weight_closed(&p), Side::A));
        }
    }

    #[test]
    fn recursion_reproduces_closed_forms_for_two_weights() {
        assert_eq!(connection_coeffs_a(&[1, 3]).unwrap(), coeffs_last_weight_closed(&[1, 3]));
        assert_eq!(connection_coeffs_a(&[3, 1]).unwrap(), coeffs_first_weight_closed(&[3, 1]));
    }
}
