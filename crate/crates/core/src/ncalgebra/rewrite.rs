//! Normal form by string rewriting on words.
//!
//! Independent of the block engine: repeatedly rewrites the leftmost
//! adjacent pair that is out of order, using the defining relations
//! directly. Used to cross-check the engine on small words.
//!
//! Rules, for `i < j`:
//! `z_j z_i → q z_i z_j`, `z_j* z_i → q z_i z_j*`,
//! `z_j z_i* → q^{-1} z_i* z_j`, `z_j* z_i* → q^{-1} z_i* z_j*`;
//! `z_i* z_i → z_i z_i* + (1 - q²) Σ_{t>i} z_t z_t*` for `i ≥ 1`;
//! `z_0 z_0* → 1 - Σ_{t≥1} z_t z_t*` and `z_0* z_0 → 1 - q² Σ_{t≥1} z_t z_t*`.
//! Each step either removes an inversion or trades a pair for pairs of
//! strictly larger index, so the process terminates.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qarith::Laurent;

use super::element::Element;
use super::monomial::{Gen, Monomial};

fn first_violation(w: &[Gen]) -> Option<usize> {
    w.windows(2).position(|p| {
        let (u, v) = (p[0], p[1]);
        u.index > v.index || (u.index == v.index && u.star != v.star && (u.star || u.index == 0))
    })
}

fn to_monomial(n: usize, w: &[Gen]) -> Monomial {
    let mut j = vec![0u32; n + 1];
    let mut k = vec![0u32; n + 1];
    for g in w {
        if g.star {
            k[g.index] += 1;
        } else {
            j[g.index] += 1;
        }
    }
    Monomial::new(&j, &k).expect("normal word")
}

pub fn normal_form_by_rewriting(n: usize, word: &[Gen]) -> Result<Element> {
    if let Some(g) = word.iter().find(|g| g.index > n) {
        return Err(Error::Index { index: g.index, max: n });
    }
    let mut pending: BTreeMap<Vec<Gen>, Laurent> = BTreeMap::new();
    pending.insert(word.to_vec(), Laurent::one());
    let mut out = Element::zero(n);
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        let Some(p) = first_violation(&w) else {
            out.add_term(to_monomial(n, &w), c);
            continue;
        };
        let (u, v) = (w[p], w[p + 1]);
        let mut push = |mid: &[Gen], coef: Laurent| {
            let mut nw = Vec::with_capacity(w.len() + 2);
            nw.extend_from_slice(&w[..p]);
            nw.extend_from_slice(mid);
            nw.extend_from_slice(&w[p + 2..]);
            let e = pending.entry(nw).or_insert_with(Laurent::zero);
            *e += &coef;
        };
        if u.index > v.index {
            let e = if v.star { -1 } else { 1 };
            push(&[v, u], c.clone().shift(e));
        } else if u.index == 0 {
            let lead = if u.star { c.clone().shift(2) } else { c.clone() };
            push(&[], c.clone());
            for t in 1..=n {
                push(&[Gen::z(t), Gen::zs(t)], -&lead);
            }
        } else {
            let i = u.index;
            push(&[v, u], c.clone());
            let corr = &c * &Laurent::one_minus_q_pow(2);
            for t in i + 1..=n {
                push(&[Gen::z(t), Gen::zs(t)], corr.clone());
            }
        }
    }
    Ok(out)
}
