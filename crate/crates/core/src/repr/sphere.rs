//! The faithful representation of the sphere algebra on `ℓ²(ℕ^n)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ncalgebra::lens::Letter;
use crate::ncalgebra::{Gen, Monomial};

use super::{apply_word, Amp, Representation, State};

/// `z_i|k⟩ = q^{k_1+…+k_i} √(1 - q^{2(k_{i+1}+1)}) |k + e_{i+1}⟩` for `i < n`,
/// `z_n|k⟩ = λ q^{k_1+…+k_n} |k⟩`.
#[derive(Clone, Debug)]
pub struct SphereRep {
    pub n: usize,
    pub q: f64,
    pub lambda: Complex64,
    /// Exponents used for `ζ_i = z_i^{p_i}`; all ones unless set.
    pub p: Vec<u32>,
}

impl SphereRep {
    pub fn new(n: usize, q: f64) -> Result<Self> {
        Self::twisted(n, q, Complex64::new(1.0, 0.0))
    }

    pub fn twisted(n: usize, q: f64, lambda: Complex64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::precondition(format!("q = {q} is not in (0, 1)")));
        }
        if (lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::precondition("λ must have modulus one"));
        }
        Ok(SphereRep { n, q, lambda, p: vec![1; n + 1] })
    }

    pub fn with_weights(mut self, p: &[u32]) -> Result<Self> {
        if p.len() != self.n + 1 {
            return Err(Error::Dimension { expected: self.n + 1, got: p.len() });
        }
        self.p = p.to_vec();
        Ok(self)
    }

    fn gen(&self, g: Gen, k: &[u32]) -> Result<Option<(State, Amp)>> {
        let i = g.index;
        if i > self.n {
            return Err(Error::Index { index: i, max: self.n });
        }
        let q = self.q;
        let head: u32 = k[..i].iter().sum();
        if i == self.n {
            let a = q.powi(head as i32);
            let phase = if g.star { self.lambda.conj() } else { self.lambda };
            return Ok(Some((k.to_vec(), phase * a)));
        }
        let mut t = k.to_vec();
        if g.star {
            if k[i] == 0 {
                return Ok(None);
            }
            t[i] -= 1;
            let a = q.powi(head as i32) * (1.0 - q.powi(2 * k[i] as i32)).sqrt();
            Ok(Some((t, Amp::new(a, 0.0))))
        } else {
            t[i] += 1;
            let a = q.powi(head as i32) * (1.0 - q.powi(2 * (k[i] + 1) as i32)).sqrt();
            Ok(Some((t, Amp::new(a, 0.0))))
        }
    }
}

impl Representation for SphereRep {
    fn lattice_dim(&self) -> usize {
        self.n
    }

    fn q(&self) -> f64 {
        self.q
    }

    fn supports(&self, _m: &[u32]) -> bool {
        true
    }

    fn letter(&self, l: Letter, m: &[u32]) -> Result<Option<(State, Amp)>> {
        match l {
            Letter::Z(i) => self.gen(Gen::z(i), m),
            Letter::Zs(i) => self.gen(Gen::zs(i), m),
            _ => {
                let word: Vec<Letter> = l
                    .sphere_word(&self.p)
                    .into_iter()
                    .map(|g| if g.star { Letter::Zs(g.index) } else { Letter::Z(g.index) })
                    .collect();
                apply_word(self, &word, m)
            }
        }
    }

    fn monomial(&self, mono: &Monomial, m: &[u32]) -> Result<Option<(State, Amp)>> {
        if mono.n() != self.n {
            return Err(Error::Dimension { expected: self.n, got: mono.n() });
        }
        let mut state = m.to_vec();
        let mut amp = Amp::new(1.0, 0.0);
        for g in mono.letters().into_iter().rev() {
            match self.gen(g, &state)? {
                Some((s, a)) => {
                    state = s;
                    amp *= a;
                }
                None => return Ok(None),
            }
        }
        Ok(Some((state, amp)))
    }
}
