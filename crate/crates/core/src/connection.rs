//! Strong connection on the lens space as a principal `U(1)`-bundle over the
//! weighted projective space, and the line-bundle idempotents it defines.
//!
//! `ω(u) = Σ a_i ζ_i ⊗ ζ_i*`, `ω(u^{-1}) = Σ b_i ζ_i* ⊗ ζ_i`, and
//! `ω(u^k)` is built by wrapping `ω(u^{k∓1})` in one more such pair.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::fredholm::{labels, pairing_idempotent, TraceResult};
use crate::ncalgebra::coeffs::{connection_coeffs_a, connection_coeffs_b, embed_coeffs};
use crate::ncalgebra::lens::{zeta, zeta_star};
use crate::ncalgebra::Element;
use crate::weights::lens_weights;

/// `Σ_i left_i ⊗ right_i`.
#[derive(Clone, Debug)]
pub struct TensorElement {
    pub pairs: Vec<(Element, Element)>,
}

impl TensorElement {
    /// `Σ_i left_i right_i`.
    pub fn multiply_out(&self) -> Element {
        let n = self.pairs[0].0.n();
        let prods: Vec<Element> = self.pairs.par_iter().map(|(l, r)| l * r).collect();
        prods.iter().fold(Element::zero(n), |acc, x| &acc + x)
    }

    /// Distinct grades of left and right factors.
    pub fn grades(&self, l: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let collect = |f: &dyn Fn(&(Element, Element)) -> &Element| {
            let mut g: Vec<i64> = self.pairs.iter().flat_map(|pr| f(pr).grades(l)).collect();
            g.sort_unstable();
            g.dedup();
            g
        };
        (collect(&|pr| &pr.0), collect(&|pr| &pr.1))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct StrongConnection {
    pub k: i32,
    pub p: Vec<u32>,
    pub omega: TensorElement,
    /// `(n+1)^{|k|}`, the number of terms produced by the recursion.
    pub unmerged_terms: usize,
}

/// Collects pairs with the same left factor.
fn merge(pairs: Vec<(Element, Element)>) -> Vec<(Element, Element)> {
    let mut out: Vec<(Element, Element)> = Vec::new();
    for (l, r) in pairs {
        if l.is_zero() || r.is_zero() {
            continue;
        }
        match out.iter_mut().find(|(l2, _)| *l2 == l) {
            Some((_, r2)) => *r2 = &*r2 + &r,
            None => out.push((l, r)),
        }
    }
    out.retain(|(_, r)| !r.is_zero());
    out
}

/// `ω(u^k)`, with `Σ ω^{[1]} ω^{[2]} = 1` checked exactly at every step.
pub fn strong_connection(k: i32, p: &[u32]) -> Result<StrongConnection> {
    lens_weights(p)?;
    let n = p.len() - 1;
    let mut pairs = vec![(Element::one(n), Element::one(n))];
    let mut unmerged = 1usize;
    if k != 0 {
        let (left, right): (Vec<Element>, Vec<Element>) = if k > 0 {
            let a = embed_coeffs(n, &connection_coeffs_a(p)?);
            ((0..=n).map(|i| &a[i] * &zeta(n, p, i)).collect(), (0..=n).map(|i| zeta_star(n, p, i)).collect())
        } else {
            let b = embed_coeffs(n, &connection_coeffs_b(p)?);
            ((0..=n).map(|i| &b[i] * &zeta_star(n, p, i)).collect(), (0..=n).map(|i| zeta(n, p, i)).collect())
        };
        for depth in 1..=k.unsigned_abs() {
            let next: Vec<(Element, Element)> = (0..=n)
                .into_par_iter()
                .flat_map_iter(|i| pairs.iter().map(move |(l, r)| (i, l, r)).collect::<Vec<_>>())
                .map(|(i, l, r)| (&left[i] * l, r * &right[i]))
                .collect();
            unmerged *= n + 1;
            pairs = merge(next);
            let omega = TensorElement { pairs: pairs.clone() };
            if !omega.multiply_out().is_one() {
                return Err(Error::Verification(format!(
                    "Σ ω(u^k)[1] ω(u^k)[2] ≠ 1 at depth {depth} for p = {p:?}"
                )));
            }
        }
    }
    Ok(StrongConnection { k, p: p.to_vec(), omega: TensorElement { pairs }, unmerged_terms: unmerged })
}

impl StrongConnection {
    /// Grade of `ζ_i`, the unit of the `ℒ_k` grading.
    pub fn unit_grade(&self) -> i64 {
        self.p.iter().map(|&x| x as i64).product()
    }

    /// Whether every left factor has grade `k·∏p` and every right factor `-k·∏p`.
    pub fn grades_ok(&self) -> bool {
        let l = lens_weights(&self.p).expect("validated");
        let d = self.k as i64 * self.unit_grade();
        let (left, right) = self.omega.grades(&l);
        left.iter().all(|&g| g == d) && right.iter().all(|&g| g == -d)
    }
}

/// `(E_k)_{ij} = ω^{[2]}_i ω^{[1]}_j`.
#[derive(Clone, Debug)]
pub struct Idempotent {
    pub k: i32,
    pub entries: Vec<Vec<Element>>,
    /// `(n+1)^{|k|}` before equal left factors are merged.
    pub recursion_size: usize,
}

impl Idempotent {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.entries[0][0].n()
    }

    pub fn square(&self) -> Vec<Vec<Element>> {
        let s = self.size();
        let n = self.n();
        (0..s)
            .into_par_iter()
            .map(|i| {
                (0..s)
                    .map(|j| (0..s).fold(Element::zero(n), |acc, l| &acc + &(&self.entries[i][l] * &self.entries[l][j])))
                    .collect()
            })
            .collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == self.entries
    }

    /// Whether every entry has grade zero.
    pub fn is_coinvariant(&self, p: &[u32]) -> bool {
        let l = lens_weights(p).expect("validated");
        self.entries.iter().flatten().all(|e| e.homogeneous_grade(&l) == Some(0))
    }

    pub fn trace(&self) -> Element {
        (0..self.size()).fold(Element::zero(self.n()), |acc, i| &acc + &self.entries[i][i])
    }

    /// Entries in the canonical text form, one line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.push_str(&format!("E[{i}][{j}] = {e}\n"));
            }
        }
        out
    }
}

pub fn idempotent(k: i32, p: &[u32]) -> Result<Idempotent> {
    let sc = strong_connection(k, p)?;
    let pairs = &sc.omega.pairs;
    let entries = pairs.iter().map(|(_, r)| pairs.iter().map(|(l, _)| r * l).collect()).collect();
    Ok(Idempotent { k, entries, recursion_size: sc.unmerged_terms })
}

/// `Tr E_k = Σ_i ω^{[2]}_i ω^{[1]}_i`.
pub fn trace_of_idempotent(k: i32, p: &[u32]) -> Result<Element> {
    let sc = strong_connection(k, p)?;
    let n = p.len() - 1;
    Ok(sc.omega.pairs.iter().fold(Element::zero(n), |acc, (l, r)| &acc + &(r * l)))
}

#[derive(Clone, Debug, Serialize)]
pub struct NontrivialityEntry {
    pub r: Vec<u32>,
    pub value: f64,
    pub tail_bound: f64,
    pub cutoff: u32,
    pub rounded: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NontrivialityReport {
    pub p: Vec<u32>,
    pub q: f64,
    pub entries: Vec<NontrivialityEntry>,
    /// Pairing of the rank-one trivial projection `1` with every `ℱ_{1,r}`.
    pub trivial_value: i64,
    pub nontrivial: bool,
}

/// `⟨ℱ_{1,r}, [E_1]⟩` for every `r`, against the trivial projection `1`.
pub fn nontriviality_certificate(p: &[u32], cfg: &RunConfig) -> Result<NontrivialityReport> {
    let e = idempotent(1, p)?;
    let mut entries = Vec::new();
    for label in labels(p).into_iter().filter(|l| l.h == 1) {
        let TraceResult { value, tail_bound, cutoff, .. } = pairing_idempotent(&e.entries, p, &label, cfg, false)?;
        entries.push(NontrivialityEntry { r: label.r, value, tail_bound, cutoff, rounded: value.round() as i64 });
    }
    let nontrivial = entries.iter().any(|x| x.tail_bound < 0.25 && x.rounded != 0);
    Ok(NontrivialityReport { p: p.to_vec(), q: cfg.q, entries, trivial_value: 0, nontrivial })
}

/// `Σ a_i ζ_i ζ_i*`, a product of an element of one line module with one of
/// the opposite line module; equal to `1` exactly.
pub fn strong_grading_witness(p: &[u32]) -> Result<Element> {
    Ok(strong_connection(1, p)?.omega.multiply_out())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_grades() {
        for p in [vec![2u32, 3], vec![1, 1], vec![2, 1, 1]] {
            for k in -2..=2 {
                let sc = strong_connection(k, &p).unwrap();
                assert!(sc.grades_ok(), "{p:?} k={k}");
                assert!(sc.omega.multiply_out().is_one());
                assert_eq!(sc.unmerged_terms, (p.len()).pow(k.unsigned_abs()));
            }
        }
        assert_eq!(strong_connection(0, &[2, 3]).unwrap().omega.len(), 1);
    }

    #[test]
    fn idempotents() {
        for p in [vec![2u32, 3], vec![1, 1, 1]] {
            let e = idempotent(1, &p).unwrap();
            assert!(e.is_idempotent());
            assert!(e.is_coinvariant(&p));
        }
        let e = idempotent(-1, &[2, 3]).unwrap();
        assert!(e.is_idempotent());
        // p = (1, …, 1): the entries are z_i* z_j
        let e = idempotent(1, &[1, 1, 1]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(e.entries[i][j], &Element::zs(2, i) * &Element::z(2, j));
            }
        }
    }

    #[test]
    fn prop_pairing_minus_one() {
        let cfg = RunConfig::default();
        for p in [vec![1u32, 3], vec![2, 3], vec![1, 1]] {
            let rep = nontriviality_certificate(&p, &cfg).unwrap();
            assert!(rep.nontrivial);
            for e in &rep.entries {
                assert!((e.value + 1.0).abs() < 1e-6 && e.tail_bound < 1e-6, "{p:?} {e:?}");
            }
        }
    }
}
