//! Dirac operators `D^λ = λ(|D|) F` on `ℓ²(ℕ^n) ⊗ ℂ²`, where
//! `|D| |m⟩ = ‖m‖₁ |m⟩`, and numerical diagnostics for them.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fredholm::{compensated_sum, FredholmLabel};
use crate::ncalgebra::Element;
use crate::repr::{apply_basis, Representation, lattice_points, norm1, Amp, NumericElement, PiRep, ShiftOperator, StateVector};
use crate::weights::lens_weights;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LambdaKind {
    /// `λ(t) = t`.
    Identity,
    /// `λ(t) = t^{n/d}`.
    Power(f64),
    /// Sampled on `0, 1, 2, …`; extended by its last value.
    Custom(Vec<f64>),
}

#[derive(Clone, Debug, Serialize)]
pub struct DiracSpec {
    pub n: usize,
    pub lambda: LambdaKind,
    pub cutoff: u32,
}

impl DiracSpec {
    pub fn new(n: usize, lambda: LambdaKind, cutoff: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::precondition("n must be positive"));
        }
        match &lambda {
            LambdaKind::Power(d) if !(*d > 0.0) => return Err(Error::precondition("d must be positive")),
            LambdaKind::Custom(v) => {
                if v.is_empty() || v[0] < 0.0 || v.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::precondition("sampled λ must be non-negative and non-decreasing"));
                }
            }
            _ => {}
        }
        Ok(DiracSpec { n, lambda, cutoff })
    }

    pub fn lambda(&self, t: u32) -> f64 {
        match &self.lambda {
            LambdaKind::Identity => t as f64,
            LambdaKind::Power(d) => (t as f64).powf(self.n as f64 / d),
            LambdaKind::Custom(v) => v[(t as usize).min(v.len() - 1)],
        }
    }

    /// `λ(0), …, λ(t_max)`.
    pub fn samples(&self, t_max: u32) -> Vec<f64> {
        (0..=t_max).map(|t| self.lambda(t)).collect()
    }
}

/// `binom(λ + n - 1, n - 1)`.
pub fn multiplicity(n: usize, lambda: u32) -> u64 {
    let (top, k) = (lambda as u64 + n as u64 - 1, n as u64 - 1);
    (0..k).fold(1u64, |acc, i| acc * (top - i) / (i + 1))
}

/// Number of `m ∈ ℕ^n` with `‖m‖₁ = λ`, by enumeration.
pub fn multiplicity_by_enumeration(n: usize, lambda: u32) -> u64 {
    lattice_points(n, lambda).iter().filter(|m| norm1(m) == lambda).count() as u64
}

/// `max_{s<t} |g(t) - g(s)| / (t - s)` over the integer grid, which is
/// attained by neighbouring points.
pub fn lipschitz_norm(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::precondition("need at least two samples"));
    }
    Ok(samples.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max))
}

/// Largest entry of `[|D|, S(k, c)] - ‖k‖₁ S(k, c)` on the truncated space.
pub fn derivation_defect(dim: usize, k: &[i64], c: impl Fn(&[u32]) -> f64, cutoff: u32) -> f64 {
    let s = ShiftOperator::weighted_shift(dim, k, c, cutoff);
    let d = s.diagonal(|m| norm1(m) as f64);
    let comm = d.compose(&s).sub(&s.compose(&d));
    let k1: i64 = k.iter().sum::<i64>();
    let scaled = ShiftOperator {
        cutoff,
        columns: s
            .columns
            .iter()
            .map(|(m, col)| (m.clone(), col.iter().map(|(t, a)| (t.clone(), a * k1 as f64)).collect()))
            .collect(),
        dropped: 0,
    };
    comm.sub(&scaled).max_abs()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfilePoint {
    pub cutoff: u32,
    /// Largest column norm of `[D^λ, π(a)]` over `‖m‖₁ ≤ cutoff`.
    pub norm: f64,
    /// `max |⟨s|(π₊ - π₋)(a)|m⟩| q^{-max_i m_i}` over the same columns.
    pub decay_constant: f64,
    /// `max_{t ≤ cutoff} n t q^t`.
    pub sequence_max: f64,
    pub envelope: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorProfile {
    pub points: Vec<ProfilePoint>,
    /// `Lip(λ) Σ |c| ‖shift‖₁`, the bound for `[|D^λ|, π_±(a)]`.
    pub shift_bound: f64,
}

impl CommutatorProfile {
    pub fn max_norm(&self) -> f64 {
        self.points.iter().map(|p| p.norm).fold(0.0, f64::max)
    }

    pub fn max_envelope(&self) -> f64 {
        self.points.iter().map(|p| p.envelope).fold(0.0, f64::max)
    }

    pub fn bounded_by_envelope(&self) -> bool {
        self.max_norm() <= self.max_envelope() * (1.0 + 1e-12)
    }
}

fn signed_image(reps: &[PiRep], a: &NumericElement, m: &[u32], parity: usize) -> Result<StateVector> {
    let mut out = StateVector::new();
    for rep in reps.iter().filter(|r| r.k % 2 == parity) {
        for (s, v) in apply_basis(rep, a, m)? {
            *out.entry(s).or_insert(Amp::new(0.0, 0.0)) += v;
        }
    }
    Ok(out)
}

/// Column norms of `[D^λ, π(a)]` for the representation of `ℱ_{n,r}`,
/// `π = π₊ ⊕ π₋` and `F` the flip of the two copies.
///
/// The commutator has the two off-diagonal blocks `λπ₋ - π₊λ` and
/// `λπ₊ - π₋λ`. The envelope is `shift_bound + N B max_{t ≤ c} λ(n t) q^t`
/// with `N` the number of monomials and `B` the largest decay constant,
/// following the split into `[|D^λ|, π_±(a)]` and `|D^λ|(π₊ - π₋)(a)`.
pub fn commutator_profile(
    a: &Element,
    spec: &DiracSpec,
    p: &[u32],
    label: &FredholmLabel,
    q: f64,
    cutoffs: &[u32],
) -> Result<CommutatorProfile> {
    let n = spec.n;
    if label.h != n || a.n() != n || p.len() != n + 1 {
        return Err(Error::Dimension { expected: n, got: label.h });
    }
    let l = lens_weights(p)?;
    if a.homogeneous_grade(&l) != Some(0) {
        return Err(Error::NotInvariant("commutator profile needs a grade-zero element".into()));
    }
    if cutoffs.windows(2).any(|w| w[1] <= w[0]) || cutoffs.is_empty() {
        return Err(Error::precondition("cutoffs must be increasing"));
    }
    let num = NumericElement::new(a, q);
    let reps: Vec<PiRep> = (0..=n).map(|k| PiRep::new(n, k, p, &label.r, q)).collect::<Result<_>>()?;
    let max_cut = *cutoffs.last().unwrap();
    let states = lattice_points(n, max_cut);
    let columns: Vec<(u32, f64, f64, Vec<u32>)> = states
        .par_iter()
        .map(|m| -> Result<(u32, f64, f64, Vec<u32>)> {
            // |D|-degree of every monomial's weighted shift at this column
            let mut shifts = vec![0u32; num.terms.len()];
            for rep in &reps {
                for (i, (mono, _)) in num.terms.iter().enumerate() {
                    if let Some((t, _)) = rep.monomial(mono, m)? {
                        shifts[i] = shifts[i].max(norm1(&t).abs_diff(norm1(m)));
                    }
                }
            }
            let plus = signed_image(&reps, &num, m, 0)?;
            let minus = signed_image(&reps, &num, m, 1)?;
            let lam_m = spec.lambda(norm1(m));
            let block = |x: &StateVector, y: &StateVector| {
                // λ x - y λ applied to |m⟩
                let mut col = StateVector::new();
                for (s, v) in x {
                    *col.entry(s.clone()).or_insert(Amp::new(0.0, 0.0)) += v * spec.lambda(norm1(s));
                }
                for (s, v) in y {
                    *col.entry(s.clone()).or_insert(Amp::new(0.0, 0.0)) -= v * lam_m;
                }
                col.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
            };
            let norm = block(&minus, &plus).max(block(&plus, &minus));
            let scale = q.powi(-(*m.iter().max().unwrap_or(&0) as i32));
            let mut diff: StateVector = plus.clone();
            for (s, v) in &minus {
                *diff.entry(s.clone()).or_insert(Amp::new(0.0, 0.0)) -= v;
            }
            let decay = diff.values().map(|v| v.norm()).fold(0.0, f64::max) * scale;
            Ok((norm1(m), norm, decay, shifts))
        })
        .collect::<Result<_>>()?;

    let mut points = Vec::new();
    for &c in cutoffs {
        let sel = columns.iter().filter(|col| col.0 <= c);
        let (norm, decay) = sel.fold((0.0f64, 0.0f64), |(a, b), col| (a.max(col.1), b.max(col.2)));
        let sequence_max = (0..=c).map(|t| n as f64 * t as f64 * q.powi(t as i32)).fold(0.0, f64::max);
        points.push(ProfilePoint { cutoff: c, norm, decay_constant: decay, sequence_max, envelope: 0.0 });
    }
    let mut shift = vec![0u32; num.terms.len()];
    for col in &columns {
        for (s, &d) in shift.iter_mut().zip(&col.3) {
            *s = (*s).max(d);
        }
    }
    // each π_k(monomial) is a weighted shift of norm ≤ 1, and the even
    // (odd) k have disjoint supports
    let lip = lipschitz_norm(&spec.samples(max_cut + shift.iter().max().unwrap_or(&0) + 1))?;
    let shift_bound = lip * num.terms.iter().zip(&shift).map(|((_, c), &d)| c.abs() * d as f64).sum::<f64>();
    let b = points.iter().map(|p| p.decay_constant).fold(0.0, f64::max);
    let terms = num.terms.len() as f64;
    for pt in &mut points {
        let lam_max = (0..=pt.cutoff).map(|t| spec.lambda(n as u32 * t) * q.powi(t as i32)).fold(0.0, f64::max);
        pt.envelope = shift_bound + terms * b * lam_max;
    }
    Ok(CommutatorProfile { points, shift_bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaPartial {
    pub s: f64,
    pub terms: u32,
    pub value: f64,
    /// `log(inc(T) / inc(T/2)) / log 2`, the apparent exponent of the increments.
    pub increment_exponent: f64,
    /// Increments decay faster than `j^{-1}`.
    pub convergent: bool,
}

/// `Σ_{j=1}^{terms} μ_j λ(j)^{-s}` with `μ_j = binom(j+n-1, n-1)`.
pub fn zeta_partial(spec: &DiracSpec, s: f64, terms: u32) -> Result<ZetaPartial> {
    if !(s > 0.0) || terms < 4 {
        return Err(Error::precondition("need s > 0 and at least four terms"));
    }
    let inc = |j: u32| multiplicity(spec.n, j) as f64 * spec.lambda(j).powf(-s);
    let incs: Vec<f64> = (1..=terms).map(inc).filter(|v| v.is_finite()).collect();
    let value = compensated_sum(incs.iter().copied());
    let exponent = (inc(terms) / inc(terms / 2)).ln() / (terms as f64 / (terms / 2) as f64).ln();
    Ok(ZetaPartial { s, terms, value, increment_exponent: exponent, convergent: exponent < -1.0 - 1e-3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalgebra::lens::xi;

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(1, 7), 1);
        assert_eq!(multiplicity(2, 3), 4);
        assert_eq!(multiplicity(4, 10), 286);
        for n in 1..=4 {
            for l in 0..=8 {
                assert_eq!(multiplicity(n, l), multiplicity_by_enumeration(n, l));
            }
        }
    }

    #[test]
    fn shifts_are_eigenvectors() {
        assert!(derivation_defect(2, &[1, 2], |m| 1.0 / (1.0 + m[0] as f64), 10) < 1e-12);
        assert_eq!(derivation_defect(3, &[0, -1, 1], |_| 0.5, 8), 0.0);
    }

    #[test]
    fn lipschitz() {
        let id = DiracSpec::new(2, LambdaKind::Identity, 0).unwrap();
        assert_eq!(lipschitz_norm(&id.samples(20)).unwrap(), 1.0);
        let exp = DiracSpec::new(2, LambdaKind::Custom((0..40).map(|t| 0.5f64.powf(-0.2 * t as f64)).collect()), 0).unwrap();
        assert!(lipschitz_norm(&exp.samples(39)).unwrap() > lipschitz_norm(&exp.samples(10)).unwrap());
    }

    #[test]
    fn profile_of_one_vanishes_and_generators_are_bounded() {
        let p = [2u32, 1, 3];
        let label = FredholmLabel::new(2, vec![1, 0], &p).unwrap();
        let spec = DiracSpec::new(2, LambdaKind::Identity, 16).unwrap();
        let one = Element::one(2);
        let prof = commutator_profile(&one, &spec, &p, &label, 0.5, &[6, 10]).unwrap();
        assert_eq!(prof.max_norm(), 0.0);
        let l: Vec<u64> = lens_weights(&p).unwrap().iter().map(|&x| x as u64).collect();
        let a = xi(&l, 0, 2);
        let prof = commutator_profile(&a, &spec, &p, &label, 0.5, &[8, 12, 16]).unwrap();
        assert!(prof.max_norm() > 0.0);
        assert!(prof.bounded_by_envelope(), "{prof:?}");
    }

    #[test]
    fn zeta_diagnostics() {
        let id = DiracSpec::new(2, LambdaKind::Identity, 0).unwrap();
        assert!(zeta_partial(&id, 3.0, 2000).unwrap().convergent);
        let pow = DiracSpec::new(2, LambdaKind::Power(3.0), 0).unwrap();
        assert!(zeta_partial(&pow, 3.3, 4000).unwrap().convergent);
        assert!(!zeta_partial(&pow, 3.0, 4000).unwrap().convergent);
        let big = zeta_partial(&id, 40.0, 100).unwrap();
        assert!((big.value - 2.0).abs() < 1e-9);
    }
}
