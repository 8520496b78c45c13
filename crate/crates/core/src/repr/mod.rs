//! Truncated representations on `ℓ²(ℕ^n)`.
//!
//! Every generator acts as a weighted shift, sending a basis vector to a
//! multiple of a single basis vector, so operators are applied basis vector
//! by basis vector and never truncated while a word is evaluated. Cutoffs
//! (on `‖m‖₁`) only enter when a finite matrix is assembled.

mod basis;
mod pi;
mod shift;
mod sphere;

pub use basis::{
    intersection_basis, is_in_intersection, is_in_subspace, lattice_points, lens_basis, subspace_basis, BasisState,
    Constraint,
};
pub use pi::{lens_irrep, sphere_state, PiRep};
pub use shift::ShiftOperator;
pub use sphere::SphereRep;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ncalgebra::lens::{Expr, Letter, Relation};
use crate::ncalgebra::{Element, Monomial};

pub type State = Vec<u32>;
pub type Amp = Complex64;
pub type StateVector = BTreeMap<State, Amp>;

/// A representation in which every generator is a weighted shift.
pub trait Representation: Sync {
    /// Number of lattice coordinates of the basis labels.
    fn lattice_dim(&self) -> usize;

    fn q(&self) -> f64;

    /// Whether the representation can be nonzero on `|m⟩`.
    fn supports(&self, m: &[u32]) -> bool;

    /// `L|m⟩` as `(target, amplitude)`, or `None` when it vanishes.
    fn letter(&self, l: Letter, m: &[u32]) -> Result<Option<(State, Amp)>>;

    /// Image of `|m⟩` under a normal-ordered monomial.
    fn monomial(&self, mono: &Monomial, m: &[u32]) -> Result<Option<(State, Amp)>>;
}

/// Applies a word of letters, rightmost letter first.
pub fn apply_word<R: Representation + ?Sized>(rep: &R, word: &[Letter], m: &[u32]) -> Result<Option<(State, Amp)>> {
    let mut state = m.to_vec();
    let mut amp = Amp::new(1.0, 0.0);
    for &l in word.iter().rev() {
        match rep.letter(l, &state)? {
            Some((s, a)) => {
                state = s;
                amp *= a;
            }
            None => return Ok(None),
        }
    }
    Ok(Some((state, amp)))
}

/// An element with coefficients evaluated at a numeric `q`.
#[derive(Clone, Debug)]
pub struct NumericElement {
    pub n: usize,
    pub terms: Vec<(Monomial, f64)>,
}

impl NumericElement {
    pub fn new(a: &Element, q: f64) -> Self {
        let terms = a.terms().map(|(m, c)| (m.clone(), c.eval_f64(q))).filter(|(_, c)| *c != 0.0).collect();
        NumericElement { n: a.n(), terms }
    }

    /// Only the monomials that can have nonzero diagonal matrix entries
    /// in representations pulled back from level `h`.
    pub fn diagonal_part(&self, h: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.is_diagonal() && m.supported_below(h)).cloned().collect();
        NumericElement { n: self.n, terms }
    }
}

/// `a|m⟩`.
pub fn apply_basis<R: Representation + ?Sized>(rep: &R, a: &NumericElement, m: &[u32]) -> Result<StateVector> {
    let mut out = StateVector::new();
    for (mono, c) in &a.terms {
        if let Some((s, amp)) = rep.monomial(mono, m)? {
            *out.entry(s).or_insert(Amp::new(0.0, 0.0)) += amp * *c;
        }
    }
    out.retain(|_, v| v.norm() != 0.0);
    Ok(out)
}

/// `⟨m|a|m⟩`.
pub fn diagonal_entry<R: Representation + ?Sized>(rep: &R, a: &NumericElement, m: &[u32]) -> Result<Amp> {
    let mut acc = Amp::new(0.0, 0.0);
    for (mono, c) in &a.terms {
        if let Some((s, amp)) = rep.monomial(mono, m)? {
            if s == m {
                acc += amp * *c;
            }
        }
    }
    Ok(acc)
}

/// Applies `a` to a vector; components landing outside `‖m‖₁ ≤ cutoff` are
/// dropped and reported through the returned flag.
pub fn apply<R: Representation + ?Sized>(
    rep: &R,
    a: &NumericElement,
    v: &StateVector,
    cutoff: u32,
) -> Result<(StateVector, bool)> {
    if a.n < rep.lattice_dim() {
        return Err(Error::Dimension { expected: rep.lattice_dim(), got: a.n });
    }
    let mut out = StateVector::new();
    let mut truncated = false;
    for (m, cm) in v {
        for (s, amp) in apply_basis(rep, a, m)? {
            if norm1(&s) > cutoff {
                truncated = true;
                continue;
            }
            *out.entry(s).or_insert(Amp::new(0.0, 0.0)) += amp * *cm;
        }
    }
    Ok((out, truncated))
}

/// Matrix of `a` on the supported basis vectors with `‖m‖₁ ≤ cutoff`.
pub fn matrix_of<R: Representation + ?Sized>(rep: &R, a: &NumericElement, cutoff: u32) -> Result<ShiftOperator> {
    let basis: Vec<State> =
        lattice_points(rep.lattice_dim(), cutoff).into_iter().filter(|m| rep.supports(m)).collect();
    ShiftOperator::from_columns(cutoff, &basis, |m| apply_basis(rep, a, m))
}

pub fn norm1(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// A linear combination of letter words evaluated at `q`.
fn expr_on_basis<R: Representation + ?Sized>(rep: &R, e: &Expr, m: &[u32]) -> Result<StateVector> {
    let q = rep.q();
    let mut out = StateVector::new();
    for (c, w) in &e.terms {
        let c = c.eval_f64(q);
        if let Some((s, amp)) = apply_word(rep, w, m)? {
            *out.entry(s).or_insert(Amp::new(0.0, 0.0)) += amp * c;
        }
    }
    Ok(out)
}

/// Largest entrywise deviation `|⟨s|lhs - rhs|m⟩|` over the given basis.
pub fn relation_defect<R: Representation + ?Sized>(rep: &R, rel: &Relation, basis: &[State]) -> Result<f64> {
    let defects: Vec<f64> = basis
        .par_iter()
        .map(|m| -> Result<f64> {
            let mut d = expr_on_basis(rep, &rel.lhs, m)?;
            for (s, v) in expr_on_basis(rep, &rel.rhs, m)? {
                *d.entry(s).or_insert(Amp::new(0.0, 0.0)) -= v;
            }
            Ok(d.values().map(|v| v.norm()).fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    Ok(defects.into_iter().fold(0.0, f64::max))
}

/// Every relation with its numeric defect.
pub fn check_relations<R: Representation + ?Sized>(
    rep: &R,
    relations: &[Relation],
    basis: &[State],
) -> Result<Vec<(String, f64)>> {
    relations.iter().map(|r| Ok((r.name.clone(), relation_defect(rep, r, basis)?))).collect()
}

#[cfg(test)]
mod tests;
