//! Enumeration of constrained lattice points.

use serde::Serialize;

use super::State;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Constraint {
    None,
    /// `0 ≤ m_1 ≤ … ≤ m_n` with remainder labels `r`.
    Lens(Vec<u32>),
    /// `0 ≤ m_1 ≤ … ≤ m_k`, `m_{k+1} > … > m_n ≥ 0`.
    PiK(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisState {
    pub m: State,
    pub tag: Constraint,
}

impl BasisState {
    pub fn satisfies(&self) -> bool {
        match &self.tag {
            Constraint::None => true,
            Constraint::Lens(_) => is_in_subspace(&self.m, self.m.len()),
            Constraint::PiK(k) => is_in_subspace(&self.m, *k),
        }
    }
}

/// All `m ∈ ℕ^dim` with `‖m‖₁ ≤ cutoff`, in lexicographic order.
pub fn lattice_points(dim: usize, cutoff: u32) -> Vec<State> {
    fn rec(dim: usize, left: u32, cur: &mut State, out: &mut Vec<State>) {
        if cur.len() == dim {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(dim, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, cutoff, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Membership in `V^h_k` (with `h = m.len()`).
pub fn is_in_subspace(m: &[u32], k: usize) -> bool {
    let h = m.len();
    k <= h && m[..k].windows(2).all(|w| w[0] <= w[1]) && m[k..].windows(2).all(|w| w[0] > w[1])
}

/// Membership in `V^h_{k-1} ∩ V^h_k`: `m_1 ≤ … ≤ m_k > m_{k+1} > … > m_h`.
pub fn is_in_intersection(m: &[u32], k: usize) -> bool {
    k >= 1 && is_in_subspace(m, k) && m[k - 1..].windows(2).all(|w| w[0] > w[1])
}

pub fn subspace_basis(h: usize, k: usize, cutoff: u32) -> Vec<BasisState> {
    lattice_points(h, cutoff)
        .into_iter()
        .filter(|m| is_in_subspace(m, k))
        .map(|m| BasisState { m, tag: Constraint::PiK(k) })
        .collect()
}

pub fn intersection_basis(h: usize, k: usize, cutoff: u32) -> Vec<BasisState> {
    lattice_points(h, cutoff)
        .into_iter()
        .filter(|m| is_in_intersection(m, k))
        .map(|m| BasisState { m, tag: Constraint::PiK(k) })
        .collect()
}

/// Basis `|m; r⟩` of the lens irreducible representation.
pub fn lens_basis(n: usize, r: &[u32], cutoff: u32) -> Vec<BasisState> {
    lattice_points(n, cutoff)
        .into_iter()
        .filter(|m| is_in_subspace(m, n))
        .map(|m| BasisState { m, tag: Constraint::Lens(r.to_vec()) })
        .collect()
}
