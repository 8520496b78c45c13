//! Fredholm modules `ℱ_{h,r}` and their pairings.
//!
//! `ℱ_{h,r}` (for `h ≥ 1`) lives on `ℓ²(ℕ^h)` with `π_± = Σ_{k even/odd} π^{(h)}_k`,
//! so a pairing is `Σ_k (-1)^k Tr π^{(h)}_k(·)`. The space splits into the
//! pieces `V^h_{k-1} ∩ V^h_k`, on which only `π_{k-1}` and `π_k` act.
//! `ℱ_{0,∅}` is the pullback of the module `c ↦ c ⊕ 0` of `ℂ`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::ncalgebra::{Element, Monomial};
use crate::ncalgebra::lens::Letter;
use crate::repr::{
    diagonal_entry, intersection_basis, subspace_basis, NumericElement, PiRep, Representation, State,
};
use crate::weights::lens_weights;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FredholmLabel {
    pub h: usize,
    pub r: Vec<u32>,
}

impl FredholmLabel {
    pub fn new(h: usize, r: Vec<u32>, p: &[u32]) -> Result<Self> {
        if h >= p.len() || r.len() != h || r.iter().zip(p).any(|(a, b)| a >= b) {
            return Err(Error::Label(format!("(h = {h}, r = {r:?}) is not valid for {p:?}")));
        }
        Ok(FredholmLabel { h, r })
    }
}

/// All labels `(h, r)`, `0 ≤ h ≤ n`, `0 ≤ r_i < p_i`, in lexicographic order.
pub fn labels(p: &[u32]) -> Vec<FredholmLabel> {
    let n = p.len() - 1;
    let mut out = vec![FredholmLabel { h: 0, r: vec![] }];
    for h in 1..=n {
        out.extend(remainders(&p[..h]).into_iter().map(|r| FredholmLabel { h, r }));
    }
    out
}

/// `1 + Σ_{k=1}^n p_0 ⋯ p_{k-1}`.
pub fn label_count(p: &[u32]) -> u64 {
    let mut total = 1u64;
    let mut prod = 1u64;
    for &pk in &p[..p.len() - 1] {
        prod *= pk as u64;
        total += prod;
    }
    total
}

/// All `r` with `0 ≤ r_i < bounds_i`.
pub fn remainders(bounds: &[u32]) -> Vec<Vec<u32>> {
    bounds.iter().fold(vec![vec![]], |acc, &b| {
        acc.into_iter()
            .flat_map(|r| {
                (0..b).map(move |x| {
                    let mut r = r.clone();
                    r.push(x);
                    r
                })
            })
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectionLabel {
    pub m: usize,
    pub alpha: Vec<u32>,
}

impl ProjectionLabel {
    pub fn new(alpha: Vec<u32>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Label("α must have at least one entry".into()));
        }
        Ok(ProjectionLabel { m: alpha.len(), alpha })
    }

    /// `α(s, β)` with `α_{i+1} = s_i + p_i(β_{i+1} - β_i)`, `β_0 = 0`.
    pub fn dual(s: &[u32], beta: &[u32], p: &[u32]) -> Result<Self> {
        let mut prev = 0i64;
        let mut alpha = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let a = s[i] as i64 + p[i] as i64 * (beta[i] as i64 - prev);
            prev = beta[i] as i64;
            alpha.push(u32::try_from(a).map_err(|_| Error::Label(format!("α(s, β) negative at {i}")))?);
        }
        Self::new(alpha)
    }

    fn partial_sums(&self) -> Vec<i64> {
        self.alpha
            .iter()
            .scan(0i64, |acc, &a| {
                *acc += a as i64;
                Some(*acc)
            })
            .collect()
    }
}

/// Neumaier summation over a fixed order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

fn binom(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn binom_int(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceResult {
    pub value: f64,
    pub tail_bound: f64,
    pub cutoff: u32,
    pub states: usize,
}

fn check_invariant(a: &Element, p: &[u32]) -> Result<()> {
    let l = lens_weights(p)?;
    if a.n() + 1 != p.len() {
        return Err(Error::Dimension { expected: p.len() - 1, got: a.n() });
    }
    if a.homogeneous_grade(&l) == Some(0) {
        Ok(())
    } else {
        Err(Error::NotInvariant(format!("element is not of grade 0 for ℓ = {l:?}")))
    }
}

/// `Σ_{t > t0} C(t+k-1, k-1) C(t, h-k) q^{2t}`, summed until the terms are
/// negligible and closed with a geometric bound.
fn shell_tail(h: usize, k: usize, t0: u64, q: f64) -> f64 {
    let term = |t: u64| binom(t + k as u64 - 1, k as u64 - 1) * binom(t, (h - k) as u64) * q.powi(2 * t as i32);
    let mut total = 0.0;
    let mut t = t0 + 1;
    loop {
        let cur = term(t);
        let next = term(t + 1);
        total += cur;
        // once the ratio of consecutive terms stays below one the rest is geometric
        if cur > 0.0 && next / cur < 0.9 && t > 2 * h as u64 + 2 {
            let ratio = next / cur;
            if cur * ratio / (1.0 - ratio) < 1e-300 || cur < total * 1e-18 {
                return total + cur * ratio / (1.0 - ratio);
            }
        }
        t += 1;
        if t > t0 + 100_000 {
            return f64::INFINITY;
        }
    }
}

/// `Tr(π₊ - π₋)(a)` for a grade-zero `a`, truncated at `‖m‖₁ ≤ cutoff`.
///
/// Only diagonal monomials have diagonal matrix entries. On
/// `V_{k-1} ∩ V_k` such a monomial differs between `π_k` and `π_{k-1}`
/// by at most `q^{2m_k - 2j}/(1 - q²)`, `j` its exponent at index `k-1`;
/// the tail bound sums this over the states left out.
pub fn trace_difference(a: &Element, p: &[u32], label: &FredholmLabel, q: f64, cutoff: u32) -> Result<TraceResult> {
    check_invariant(a, p)?;
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::precondition(format!("q = {q} is not in (0, 1)")));
    }
    let h = label.h;
    if h == 0 {
        // a grade-zero monomial in z_0 alone is constant
        let value = a.coeff(&Monomial::one(a.n())).eval_f64(q);
        return Ok(TraceResult { value, tail_bound: 0.0, cutoff, states: 1 });
    }
    let num = NumericElement::new(a, q).diagonal_part(h);
    let mut values = Vec::new();
    let mut tail = 0.0;
    for k in 1..=h {
        let hi = PiRep::new(h, k, p, &label.r, q)?;
        let lo = PiRep::new(h, k - 1, p, &label.r, q)?;
        let basis: Vec<State> = intersection_basis(h, k, cutoff).into_iter().map(|b| b.m).collect();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let part: Vec<f64> = basis
            .par_iter()
            .map(|m| Ok(sign * (diagonal_entry(&hi, &num, m)? - diagonal_entry(&lo, &num, m)?).re))
            .collect::<Result<_>>()?;
        values.extend(part);
        let ck: f64 = num
            .terms
            .iter()
            .map(|(mono, c)| c.abs() * q.powi(-2 * mono.j(k - 1) as i32))
            .sum::<f64>()
            / (1.0 - q * q);
        if ck > 0.0 {
            tail += ck * shell_tail(h, k, (cutoff / h as u32) as u64, q);
        }
    }
    Ok(TraceResult { value: compensated_sum(values.iter().copied()), tail_bound: tail, cutoff, states: values.len() })
}

/// Doubles the cutoff until the tail bound is below `target` or
/// `cfg.max_cutoff` is reached.
pub fn trace_difference_auto(
    a: &Element,
    p: &[u32],
    label: &FredholmLabel,
    cfg: &RunConfig,
    target: f64,
) -> Result<TraceResult> {
    let mut cutoff = cfg.cutoff;
    loop {
        let res = trace_difference(a, p, label, cfg.q, cutoff)?;
        if res.tail_bound < target || cutoff >= cfg.max_cutoff {
            return Ok(res);
        }
        cutoff = (cutoff * 2).min(cfg.max_cutoff);
    }
}

/// Exponents `γ_i` with `π^{(h)}_k(X_i)|m⟩ = q^{2γ_i}|m⟩`, `X_i = Σ_{j≥i} x_j`,
/// for `i = 1, …, k`; read off the numerical eigenvalue and checked against
/// `q^{2γ_i}`. For `i > k` the eigenvalue is zero.
pub fn x_exponents(rep: &PiRep, m: &[u32]) -> Result<Vec<i64>> {
    let q2 = rep.q * rep.q;
    let xs: Vec<f64> = (0..=rep.h)
        .map(|j| Ok(rep.letter(Letter::X(j), m)?.map(|(_, a)| a.re).unwrap_or(0.0)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 1..=rep.k {
        let lam = compensated_sum(xs[i..].iter().copied());
        let gamma = (lam.ln() / q2.ln()).round();
        let expected = q2.powi(gamma as i32);
        if !(lam > 0.0) || ((lam - expected) / expected).abs() > 1e-8 {
            return Err(Error::Verification(format!("X_{i} eigenvalue {lam} at {m:?} is not a power of q²")));
        }
        out.push(gamma as i64);
    }
    Ok(out)
}

/// Whether `|m⟩` is in the range of `π^{(h)}_k(P_m(α))`.
pub fn spectral_projection_states(rep: &PiRep, proj: &ProjectionLabel, m: &[u32]) -> Result<bool> {
    if proj.m > rep.k {
        return Ok(false);
    }
    let gamma = x_exponents(rep, m)?;
    Ok(proj.partial_sums().iter().zip(&gamma).all(|(a, g)| a == g))
}

/// `(-1)^m C(N(r,α), h-m)` when `h ≥ m` and `p_i | α_{i+1} - r_i ≥ 0`, else 0.
pub fn pairing_formula(label: &FredholmLabel, proj: &ProjectionLabel, p: &[u32]) -> i64 {
    let (h, m) = (label.h, proj.m);
    if h < m {
        return 0;
    }
    let mut big_n = 0u64;
    for i in 0..m {
        let (a, r) = (proj.alpha[i] as i64, label.r[i] as i64);
        if a < r || (a - r) % p[i] as i64 != 0 {
            return 0;
        }
        big_n += ((a - r) / p[i] as i64) as u64;
    }
    let sign = if m % 2 == 0 { 1 } else { -1 };
    sign * binom_int(big_n, (h - m) as u64)
}

/// Signed counts of basis vectors by their `X_i` exponents, for one label.
///
/// `counts[k][(γ_1, …, γ_j)]` is the number of `|m⟩ ∈ V^h_k` (within the
/// cutoff) with these leading exponents, for every `j ≤ k`.
pub struct OracleTable {
    pub h: usize,
    pub cutoff: u32,
    counts: Vec<HashMap<Vec<i64>, i64>>,
}

impl OracleTable {
    pub fn build(label: &FredholmLabel, p: &[u32], q: f64, cutoff: u32) -> Result<Self> {
        let h = label.h;
        let mut counts = Vec::new();
        if h == 0 {
            return Ok(OracleTable { h, cutoff, counts });
        }
        for k in 0..=h {
            let rep = PiRep::new(h, k, p, &label.r, q)?;
            let basis: Vec<State> = subspace_basis(h, k, cutoff).into_iter().map(|b| b.m).collect();
            let exps: Vec<Vec<i64>> = basis.par_iter().map(|m| x_exponents(&rep, m)).collect::<Result<_>>()?;
            let mut map: HashMap<Vec<i64>, i64> = HashMap::new();
            for g in exps {
                let mut acc = Vec::with_capacity(g.len());
                // store cumulative prefixes: γ_i are already cumulative sums of K_j
                for v in g {
                    acc.push(v);
                    *map.entry(acc.clone()).or_default() += 1;
                }
            }
            counts.push(map);
        }
        Ok(OracleTable { h, cutoff, counts })
    }

    /// `Σ_k (-1)^k #{m ∈ V^h_k : π_k(P_m(α))|m⟩ = |m⟩}`.
    pub fn pairing(&self, proj: &ProjectionLabel) -> f64 {
        if self.h == 0 {
            // X_i ↦ 0 under the character, never an eigenvalue q^{2β}
            return 0.0;
        }
        let key = proj.partial_sums();
        let terms = (0..=self.h).filter(|&k| k >= proj.m).map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * self.counts[k].get(&key).copied().unwrap_or(0) as f64
        });
        compensated_sum(terms)
    }

    /// Zero once every vector of `V_m ∩ V_{m-1}` in the range lies within the
    /// cutoff; other contributions cancel state by state.
    pub fn tail_bound(&self, proj: &ProjectionLabel) -> f64 {
        let total: u64 = proj.alpha.iter().map(|&a| a as u64).sum();
        if self.h == 0 || (self.cutoff as u64) >= self.h as u64 * total {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Cutoff that certifies the oracle for every `α` with `Σα ≤ alpha_sum`.
pub fn certified_cutoff(h: usize, alpha_sum: u32) -> u32 {
    (h as u32 * alpha_sum).max(4)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub p: Vec<u32>,
    pub h: usize,
    pub r: Vec<u32>,
    pub m: usize,
    pub alpha: Vec<u32>,
    pub q: f64,
    pub cutoff: u32,
    pub formula_value: i64,
    pub oracle_value: f64,
    pub tail_bound: f64,
    pub agrees: bool,
}

impl PairingReport {
    pub fn new(
        p: &[u32],
        label: &FredholmLabel,
        proj: &ProjectionLabel,
        q: f64,
        cutoff: u32,
        oracle: f64,
        tail: f64,
    ) -> Self {
        let formula = pairing_formula(label, proj, p);
        PairingReport {
            p: p.to_vec(),
            h: label.h,
            r: label.r.clone(),
            m: proj.m,
            alpha: proj.alpha.clone(),
            q,
            cutoff,
            formula_value: formula,
            oracle_value: oracle,
            tail_bound: tail,
            agrees: (oracle - formula as f64).abs() < 0.5 && tail < 0.25,
        }
    }

    pub fn to_json_line(&self) -> String {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["schema"] = "qwps/1".into();
        v.to_string()
    }

    pub const CSV_HEADER: &'static str = "h,r,m,alpha,formula,oracle,tail,agrees";

    /// Vector columns are written with `;` between entries.
    pub fn to_csv_row(&self) -> String {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(";");
        format!(
            "{},{},{},{},{},{},{:e},{}",
            self.h,
            join(&self.r),
            self.m,
            join(&self.alpha),
            self.formula_value,
            self.oracle_value,
            self.tail_bound,
            self.agrees
        )
    }
}

/// Oracle value for one pairing, raising the cutoff until it is certified.
pub fn pairing_oracle(
    label: &FredholmLabel,
    proj: &ProjectionLabel,
    p: &[u32],
    cfg: &RunConfig,
) -> Result<PairingReport> {
    lens_weights(p)?;
    let total: u32 = proj.alpha.iter().sum();
    let cutoff = cfg.cutoff.max(certified_cutoff(label.h, total)).min(cfg.max_cutoff);
    let table = OracleTable::build(label, p, cfg.q, cutoff)?;
    Ok(PairingReport::new(p, label, proj, cfg.q, cutoff, table.pairing(proj), table.tail_bound(proj)))
}

/// All projections `P_m(α)` with `m ≤ m_max` and entries `≤ alpha_max`.
pub fn projection_grid(m_max: usize, alpha_max: u32) -> Vec<ProjectionLabel> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for alpha in remainders(&vec![alpha_max + 1; m]) {
            out.push(ProjectionLabel { m, alpha });
        }
    }
    out
}

/// Reports for every label with `h ≤ h_max` against every projection of
/// the grid, one oracle table per label.
pub fn pairing_table(p: &[u32], h_max: usize, m_max: usize, alpha_max: u32, cfg: &RunConfig) -> Result<Vec<PairingReport>> {
    lens_weights(p)?;
    let n = p.len() - 1;
    let grid = projection_grid(m_max.min(n), alpha_max);
    let mut out = Vec::new();
    for label in labels(p).into_iter().filter(|l| l.h <= h_max) {
        let cutoff = cfg.cutoff.max(certified_cutoff(label.h, alpha_max * m_max as u32)).min(cfg.max_cutoff);
        let table = OracleTable::build(&label, p, cfg.q, cutoff)?;
        for proj in &grid {
            out.push(PairingReport::new(p, &label, proj, cfg.q, cutoff, table.pairing(proj), table.tail_bound(proj)));
        }
    }
    Ok(out)
}

/// `⟨ℱ_{h,r}, [P_m(α(s,0))]⟩` for all labels, together with the trivial
/// projection paired against `ℱ_{0,∅}`. Rows are Fredholm labels, columns
/// are `[1]` followed by `(m, s)` in label order.
pub struct DualFamily {
    pub rows: Vec<FredholmLabel>,
    pub columns: Vec<FredholmLabel>,
    pub matrix: Vec<Vec<f64>>,
    pub max_tail: f64,
}

impl DualFamily {
    /// Whether the matrix is diagonal with entries `(-1)^m` (rounded).
    pub fn is_signed_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &v)| {
                let want = if i == j {
                    if self.columns[j].h % 2 == 0 { 1.0 } else { -1.0 }
                } else {
                    0.0
                };
                (v - want).abs() < 0.5
            })
        }) && self.max_tail < 0.25
    }
}

pub fn dual_family(p: &[u32], q: f64) -> Result<DualFamily> {
    let labs = labels(p);
    let one = Element::one(p.len() - 1);
    let mut matrix = Vec::new();
    let mut max_tail = 0.0f64;
    for row in &labs {
        // largest Σα among the columns
        let total: u32 = p[..p.len() - 1].iter().map(|x| x - 1).sum::<u32>().max(1);
        let table = OracleTable::build(row, p, q, certified_cutoff(row.h, total))?;
        let mut line = Vec::new();
        for col in &labs {
            if col.h == 0 {
                let cfg = RunConfig { q, cutoff: 8, ..RunConfig::default() };
                let t = trace_difference_auto(&one, p, row, &cfg, 1e-6)?;
                max_tail = max_tail.max(t.tail_bound);
                line.push(t.value);
            } else {
                let proj = ProjectionLabel::dual(&col.r, &vec![0; col.h], p)?;
                max_tail = max_tail.max(table.tail_bound(&proj));
                line.push(table.pairing(&proj));
            }
        }
        matrix.push(line);
    }
    Ok(DualFamily { rows: labs.clone(), columns: labs, matrix, max_tail })
}

/// Pairing of `ℱ_{h,r}` with an idempotent matrix over the invariant
/// subalgebra: the trace difference of its matrix trace.
pub fn pairing_idempotent(
    e: &[Vec<Element>],
    p: &[u32],
    label: &FredholmLabel,
    cfg: &RunConfig,
    check: bool,
) -> Result<TraceResult> {
    let size = e.len();
    let n = p.len() - 1;
    if e.iter().any(|row| row.len() != size) {
        return Err(Error::precondition("idempotent must be square"));
    }
    if check {
        for i in 0..size {
            for j in 0..size {
                let sq = (0..size).fold(Element::zero(n), |acc, l| &acc + &(&e[i][l] * &e[l][j]));
                if sq != e[i][j] {
                    return Err(Error::precondition(format!("E² ≠ E at entry ({i}, {j})")));
                }
            }
        }
    }
    let trace = (0..size).fold(Element::zero(n), |acc, i| &acc + &e[i][i]);
    trace_difference_auto(&trace, p, label, cfg, cfg.tolerance_traces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_labels() {
        for p in [vec![1u32, 3], vec![2, 3, 1], vec![3, 2, 1, 1]] {
            assert_eq!(labels(&p).len() as u64, label_count(&p));
        }
        assert_eq!(label_count(&[2, 3, 5]), 1 + 2 + 6);
    }

    #[test]
    fn formula_examples() {
        let p = [2u32, 3, 1];
        let l = |h, r: Vec<u32>| FredholmLabel::new(h, r, &p).unwrap();
        let a = |v: Vec<u32>| ProjectionLabel::new(v).unwrap();
        assert_eq!(pairing_formula(&l(1, vec![1]), &a(vec![1]), &p), -1);
        assert_eq!(pairing_formula(&l(1, vec![0]), &a(vec![1, 0]), &p), 0);
        assert_eq!(pairing_formula(&l(2, vec![1, 0]), &a(vec![3]), &p), -1);
        assert_eq!(pairing_formula(&l(2, vec![1, 0]), &a(vec![2]), &p), 0);
    }

    #[test]
    fn oracle_matches_formula_small() {
        let cfg = RunConfig::default();
        for p in [vec![2u32, 3, 1], vec![1, 2, 3]] {
            for rep in pairing_table(&p, 2, 2, 3, &cfg).unwrap() {
                assert!(rep.agrees, "{rep:?}");
            }
        }
    }

    #[test]
    fn trivial_projection_and_grade_check() {
        let p = [2u32, 1];
        let one = Element::one(1);
        for label in labels(&p) {
            let t = trace_difference(&one, &p, &label, 0.5, 10).unwrap();
            assert_eq!(t.value, if label.h == 0 { 1.0 } else { 0.0 });
        }
        let z = Element::z(1, 0);
        assert!(trace_difference(&z, &p, &labels(&p)[1], 0.5, 10).is_err());
    }

    #[test]
    fn diagonal_filter_is_exact() {
        // ξ_{0,1} ξ_{0,1}* + ξ_{0,1}* ξ_{0,1} for p = (2, 3), ℓ = (3, 2)
        let xi = crate::ncalgebra::lens::xi(&[3, 2], 0, 1);
        let a = &(&xi * &xi.adjoint()) + &(&xi.adjoint() * &xi);
        let q = 0.5;
        let label = FredholmLabel::new(1, vec![1], &[2, 3]).unwrap();
        let full = NumericElement::new(&a, q);
        let diag = full.diagonal_part(1);
        for k in 0..=1 {
            let rep = PiRep::new(1, k, &[2, 3], &label.r, q).unwrap();
            for m in 0..12u32 {
                let x = diagonal_entry(&rep, &full, &[m]).unwrap();
                let y = diagonal_entry(&rep, &diag, &[m]).unwrap();
                assert!((x - y).norm() < 1e-14);
            }
        }
        let t = trace_difference(&a, &[2, 3], &label, q, 40).unwrap();
        let t2 = trace_difference(&a, &[2, 3], &label, q, 60).unwrap();
        assert!((t.value - t2.value).abs() <= t.tail_bound + 1e-15);
        assert!(t.tail_bound < 1e-6);
    }
}
