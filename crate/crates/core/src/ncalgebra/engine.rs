//! Normal-ordered multiplication.
//!
//! A normal monomial times a generator is computed by moving the generator
//! left past the blocks of larger index (a power of `q` each) and merging it
//! into its own block. Merging `z_i` into `z_i^j (z_i*)^k` uses
//! `(z_i*)^k z_i = z_i (z_i*)^k + (1 - q^{2k}) q^{2-2k} (z_i*)^{k-1} X_i`,
//! and at index 0 the sphere relation `Σ z_i z_i* = 1` removes mixed powers.
//! Results are memoised per thread.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::qarith::Laurent;

use super::element::Element;
use super::monomial::{Gen, Monomial};

const CACHE_LIMIT: usize = 400_000;

thread_local! {
    static GEN_CACHE: RefCell<HashMap<(Monomial, Gen), Rc<Element>>> = RefCell::new(HashMap::new());
    static MUL_CACHE: RefCell<HashMap<(Monomial, Monomial), Rc<Element>>> = RefCell::new(HashMap::new());
}

/// Drop the memo tables of the current thread.
pub fn clear_caches() {
    GEN_CACHE.with(|c| c.borrow_mut().clear());
    MUL_CACHE.with(|c| c.borrow_mut().clear());
}

pub(crate) fn mono_times_gen(m: &Monomial, g: Gen) -> Rc<Element> {
    let key = (m.clone(), g);
    if let Some(hit) = GEN_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let val = Rc::new(compute_gen(m, g));
    GEN_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, val.clone());
    });
    val
}

pub(crate) fn mono_mul(a: &Monomial, b: &Monomial) -> Rc<Element> {
    let Some((prefix, g)) = b.split_last() else {
        return Rc::new(Element::from_monomial(a.clone(), Laurent::one()));
    };
    if prefix.is_one() {
        return mono_times_gen(a, g);
    }
    let key = (a.clone(), b.clone());
    if let Some(hit) = MUL_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let head = mono_mul(a, &prefix);
    let val = Rc::new(head.mul_gen(g));
    MUL_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, val.clone());
    });
    val
}

pub(crate) fn multiply(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero(a.n());
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let c = ca * cb;
            if ma.is_one() {
                out.add_term(mb.clone(), c);
            } else if mb.is_one() {
                out.add_term(ma.clone(), c);
            } else {
                out.add_scaled(&mono_mul(ma, mb), &c);
            }
        }
    }
    out
}

/// Adds `coef · Σ_{t ≥ start} prefix · z_t z_t* · suffix`, where `prefix`
/// has no letters of index `≥ start` and the suffix is the part of `m` with
/// index `≥ start`.
fn add_x_sum(out: &mut Element, prefix: &Monomial, start: usize, m: &Monomial, coef: &Laurent) {
    let n = m.n();
    let mut suffix = Monomial::one(n);
    for t in start..=n {
        suffix.set(t, m.j(t), m.k(t));
    }
    for t in start..=n {
        let mut p = prefix.clone();
        p.set(t, 1, 1);
        out.add_scaled(&mono_mul(&p, &suffix), coef);
    }
}

fn compute_gen(m: &Monomial, g: Gen) -> Element {
    let n = m.n();
    let i = g.index;
    let passed: i32 = (i + 1..=n).map(|l| (m.j(l) + m.k(l)) as i32).sum();
    let pass = Laurent::q_pow(if g.star { -passed } else { passed });
    let (j, k) = (m.j(i), m.k(i));
    let mut out = Element::zero(n);
    let with = |jj: u32, kk: u32| {
        let mut m2 = m.clone();
        m2.set(i, jj, kk);
        m2
    };
    let prefix_with = |jj: u32, kk: u32| {
        let mut p = Monomial::one(n);
        for t in 0..i {
            p.set(t, m.j(t), m.k(t));
        }
        p.set(i, jj, kk);
        p
    };
    if i == 0 {
        match (g.star, j, k) {
            (false, _, 0) => out.add_term(with(j + 1, 0), pass),
            (true, 0, _) => out.add_term(with(0, k + 1), pass),
            // (z_0*)^k z_0 = (z_0*)^{k-1} (1 - q² X_0)
            (false, _, _) => {
                out.add_term(with(0, k - 1), pass.clone());
                add_x_sum(&mut out, &prefix_with(0, k - 1), 1, m, &-pass.shift(2));
            }
            // z_0^j z_0* = z_0^{j-1} (1 - X_0)
            (true, _, _) => {
                out.add_term(with(j - 1, 0), pass.clone());
                add_x_sum(&mut out, &prefix_with(j - 1, 0), 1, m, &-pass);
            }
        }
        return out;
    }
    if g.star {
        out.add_term(with(j, k + 1), pass);
    } else if k == 0 {
        out.add_term(with(j + 1, 0), pass);
    } else {
        out.add_term(with(j + 1, k), pass.clone());
        if i < n {
            let c = &(&pass * &Laurent::one_minus_q_pow(2 * k as i32)) * &Laurent::q_pow(2 - 2 * k as i32);
            add_x_sum(&mut out, &prefix_with(j, k - 1), i + 1, m, &c);
        }
    }
    out
}
