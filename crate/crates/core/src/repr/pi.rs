//! The representations `π^{(h)}_k` of the lens algebra and the lens irreps.
//!
//! With `m_0 = 0` put `K_j = r_{j-1} + p_{j-1}(m_j - m_{j-1})` and
//! `E_i = q^{2(K_1+…+K_i)}`. On `V^h_k`:
//! `x_i = E_i - E_{i+1}` (`i < k`), `x_k = E_k`, `x_i = 0` (`i > k`);
//! `ζ_i|m⟩ = q^{p_i(K_1+…+K_i)} √(∏_{s=1}^{p_i}(1 - q^{2(K_{i+1}+s)})) |m + e_{ik}⟩`
//! for `i < k` and `ζ_k = q^{p_k(K_1+…+K_k)}`. These are the sphere
//! representation read through `k_j = K_j`, which [`sphere_state`] exposes.

use crate::error::{Error, Result};
use crate::ncalgebra::lens::Letter;
use crate::ncalgebra::Monomial;

use super::basis::is_in_subspace;
use super::{Amp, Representation, State};

#[derive(Clone, Debug)]
pub struct PiRep {
    pub h: usize,
    pub k: usize,
    pub p: Vec<u32>,
    pub r: Vec<u32>,
    pub q: f64,
}

/// The irreducible lens representation on `0 ≤ m_1 ≤ … ≤ m_n`.
pub fn lens_irrep(p: &[u32], r: &[u32], q: f64) -> Result<PiRep> {
    let n = p.len().saturating_sub(1);
    PiRep::new(n, n, p, r, q)
}

/// Sphere basis label `k` of the lens basis vector `|m; r⟩`.
pub fn sphere_state(p: &[u32], r: &[u32], m: &[u32]) -> State {
    let mut prev = 0;
    m.iter()
        .enumerate()
        .map(|(j, &mj)| {
            let kj = r[j] + p[j] * (mj - prev);
            prev = mj;
            kj
        })
        .collect()
}

impl PiRep {
    pub fn new(h: usize, k: usize, p: &[u32], r: &[u32], q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::precondition(format!("q = {q} is not in (0, 1)")));
        }
        if k > h || p.len() < h + 1 {
            return Err(Error::Label(format!("need 0 ≤ k ≤ h < len(p), got k = {k}, h = {h}")));
        }
        if r.len() != h || r.iter().zip(p).any(|(ri, pi)| ri >= pi) {
            return Err(Error::Label(format!("remainders {r:?} invalid for weights {p:?} at level {h}")));
        }
        Ok(PiRep { h, k, p: p.to_vec(), r: r.to_vec(), q })
    }

    /// `K_1, …, K_k`.
    fn big_k(&self, m: &[u32]) -> Vec<i64> {
        let mut prev = 0i64;
        (0..self.k)
            .map(|j| {
                let mj = m[j] as i64;
                let v = self.r[j] as i64 + self.p[j] as i64 * (mj - prev);
                prev = mj;
                v
            })
            .collect()
    }

    /// `K_1 + … + K_i` for `i = 0, …, k`; the exponent of `E_i` is twice this.
    pub fn partial_sums(&self, m: &[u32]) -> Vec<i64> {
        let mut acc = vec![0];
        for v in self.big_k(m) {
            acc.push(acc.last().unwrap() + v);
        }
        acc
    }

    fn qp(&self, e: i64) -> f64 {
        self.q.powi(e as i32)
    }

    fn zeta_amp(&self, i: usize, sums: &[i64], kk: &[i64]) -> f64 {
        let pi = self.p[i] as i64;
        let prod: f64 = (1..=pi).map(|s| 1.0 - self.qp(2 * (kk[i] + s))).product();
        self.qp(pi * sums[i]) * prod.sqrt()
    }

    /// `⟨m| Y_i(t) |m⟩` with `Y_i(t) = z_i^t (z_i*)^t`.
    fn y_value(&self, i: usize, t: u32, sums: &[i64], kk: &[i64]) -> f64 {
        if t == 0 {
            return 1.0;
        }
        if i > self.k {
            return 0.0;
        }
        let e = self.qp(2 * sums[i]);
        if i == self.k {
            return e.powi(t as i32);
        }
        // x_i + (1 - q^{-2s}) X_i = E_i (1 - q^{2(K_{i+1} - s)})
        let mut v = 1.0;
        for s in 0..t as i64 {
            let d = kk[i] - s;
            if d == 0 {
                return 0.0;
            }
            v *= e * (1.0 - self.qp(2 * d));
        }
        v
    }

    fn shift(&self, m: &[u32], i: usize, up: bool) -> Option<State> {
        let mut t = m.to_vec();
        for c in &mut t[i..self.k] {
            if up {
                *c += 1;
            } else {
                *c = c.checked_sub(1)?;
            }
        }
        Some(t)
    }

    fn zeta_power(&self, i: usize, c: u32, star: bool, m: State) -> Option<(State, f64)> {
        let mut state = m;
        let mut amp = 1.0;
        for _ in 0..c {
            let l = if star { Letter::ZetaStar(i) } else { Letter::Zeta(i) };
            let (s, a) = self.lens_letter(l, &state)?;
            state = s;
            amp *= a;
        }
        Some((state, amp))
    }

    fn lens_letter(&self, l: Letter, m: &[u32]) -> Option<(State, f64)> {
        if !self.supports(m) {
            return None;
        }
        let i = l.index();
        if i > self.k {
            return None;
        }
        let sums = self.partial_sums(m);
        let kk = self.big_k(m);
        match l {
            Letter::X(_) => {
                let e = self.qp(2 * sums[i]);
                let v = if i < self.k { e * (1.0 - self.qp(2 * kk[i])) } else { e };
                Some((m.to_vec(), v))
            }
            Letter::Zeta(_) | Letter::ZetaStar(_) if i == self.k => {
                Some((m.to_vec(), self.qp(self.p[i] as i64 * sums[i])))
            }
            Letter::Zeta(_) => Some((self.shift(m, i, true)?, self.zeta_amp(i, &sums, &kk))),
            Letter::ZetaStar(_) => {
                let prev = if i == 0 { 0 } else { m[i - 1] };
                if m[i] <= prev {
                    return None;
                }
                let t = self.shift(m, i, false)?;
                let ts = self.partial_sums(&t);
                let tk = self.big_k(&t);
                let a = self.zeta_amp(i, &ts, &tk);
                Some((t, a))
            }
            Letter::Z(_) | Letter::Zs(_) => unreachable!(),
        }
    }
}

impl Representation for PiRep {
    fn lattice_dim(&self) -> usize {
        self.h
    }

    fn q(&self) -> f64 {
        self.q
    }

    fn supports(&self, m: &[u32]) -> bool {
        m.len() == self.h && is_in_subspace(m, self.k)
    }

    fn letter(&self, l: Letter, m: &[u32]) -> Result<Option<(State, Amp)>> {
        if matches!(l, Letter::Z(_) | Letter::Zs(_)) {
            return Err(Error::NotInvariant(format!("{l:?} is not in the lens algebra")));
        }
        Ok(self.lens_letter(l, m).map(|(s, a)| (s, Amp::new(a, 0.0))))
    }

    /// Each block `z_i^j (z_i*)^t` of a lens-invariant monomial is
    /// `ζ_i^c Y_i(t)` when `j = t + c p_i`, or `Y_i(j) (ζ_i*)^c` when
    /// `t = j + c p_i`.
    fn monomial(&self, mono: &Monomial, m: &[u32]) -> Result<Option<(State, Amp)>> {
        if mono.n() < self.h {
            return Err(Error::Dimension { expected: self.h, got: mono.n() });
        }
        if !self.supports(m) {
            return Ok(None);
        }
        let mut state = m.to_vec();
        let mut amp = 1.0;
        for i in (0..=mono.n()).rev() {
            let (j, t) = (mono.j(i), mono.k(i));
            if j == 0 && t == 0 {
                continue;
            }
            if i > self.h {
                return Ok(None);
            }
            let pi = self.p[i];
            let diff = j.abs_diff(t);
            if diff % pi != 0 {
                return Err(Error::NotInvariant(format!("block {i} of {mono} is not a lens element")));
            }
            let c = diff / pi;
            let ydeg = j.min(t);
            let y = |s: &State| {
                let sums = self.partial_sums(s);
                let kk = self.big_k(s);
                self.y_value(i, ydeg, &sums, &kk)
            };
            if j >= t {
                amp *= y(&state);
                if amp == 0.0 {
                    return Ok(None);
                }
                let Some((s, a)) = self.zeta_power(i, c, false, state) else { return Ok(None) };
                state = s;
                amp *= a;
            } else {
                let Some((s, a)) = self.zeta_power(i, c, true, state) else { return Ok(None) };
                state = s;
                amp *= a * y(&state);
            }
            if amp == 0.0 {
                return Ok(None);
            }
        }
        Ok(Some((state, Amp::new(amp, 0.0))))
    }
}
