//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

use std::time::{Duration, Instant};

use qwps::config::RunConfig;
use qwps::connection::{idempotent, nontriviality_certificate, strong_connection};
use qwps::fredholm::{dual_family, labels, pairing_formula, projection_grid, remainders, OracleTable};
use qwps::ncalgebra::coeffs::{coeffs_n1_closed, connection_coeffs, verify_coeffs, Side};
use qwps::ncalgebra::lens::{lens_relations, sphere_identities, xi};
use qwps::ncalgebra::{generation_test, Generation};
use qwps::qarith::{binomial_generating_product, f_poly, f_product, q_binomial};
use qwps::spectral::{
    commutator_profile, derivation_defect, multiplicity, multiplicity_by_enumeration, DiracSpec, LambdaKind,
};
use qwps::weights::{is_cpn, lens_weights, pairwise_coprime_vectors, WeightVector};

const PAIRING_TOL: f64 = 1e-6;
const TAIL_MAX: f64 = 0.25;
const QS: [f64; 3] = [0.3, 0.5, 0.7];

/// Pairwise coprime `p` with `n` in the range and entries `≤ max`.
fn vectors(n_range: std::ops::RangeInclusive<usize>, max: u32) -> Vec<Vec<u32>> {
    n_range.flat_map(|n| pairwise_coprime_vectors(n + 1, max)).collect()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn relation_suite() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for p in vectors(1..=3, 3) {
        let n = p.len() - 1;
        let mut rels = lens_relations(&p);
        rels.extend(sphere_identities(n, 4));
        for rel in rels {
            count += 1;
            if !rel.holds(n, &p) {
                return fail(format!("{} fails for p = {p:?}", rel.name));
            }
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        return fail(format!("{count} relations exact but took {t:?}"));
    }
    pass(format!("{count} relations exact in {:.1}s", t.as_secs_f64()))
}

/// `⟨ℱ_{1,r}, [E_1]⟩` for every `r`, at each `q`.
fn e1_pairings(p: &[u32], qs: &[f64]) -> Result<Vec<(f64, Vec<u32>, f64, f64)>, String> {
    let mut out = Vec::new();
    for &q in qs {
        let cfg = RunConfig::default().with_q(q);
        let cert = nontriviality_certificate(p, &cfg).map_err(|e| e.to_string())?;
        for e in cert.entries {
            out.push((q, e.r, e.value, e.tail_bound));
        }
    }
    Ok(out)
}

fn prop_pairing() -> Outcome {
    let mut cases = 0;
    for p in vectors(1..=2, 3) {
        let start = Instant::now();
        let vals = match e1_pairings(&p, &[0.3, 0.5]) {
            Ok(v) => v,
            Err(e) => return fail(format!("p = {p:?}: {e}")),
        };
        for (q, r, v, tail) in vals {
            cases += 1;
            if (v + 1.0).abs() > PAIRING_TOL || tail >= TAIL_MAX || tail > PAIRING_TOL {
                return fail(format!("p = {p:?}, r = {r:?}, q = {q}: value {v}, tail {tail:e}"));
            }
        }
        if start.elapsed() > Duration::from_secs(60) {
            return fail(format!("p = {p:?} took {:?}", start.elapsed()));
        }
    }
    pass(format!("{cases} values within {PAIRING_TOL:e} of -1"))
}

/// `(formula, oracle)` for every label and projection in the grid, at `q`.
fn exhaustive(q: f64) -> Result<Vec<(Vec<u32>, String, i64, f64, f64)>, String> {
    let mut out = Vec::new();
    for p in vectors(1..=3, 3) {
        let n = p.len() - 1;
        let grid = projection_grid(n, 4);
        for label in labels(&p) {
            let cutoff = (label.h as u32 * 4 * n as u32).max(4);
            let table = OracleTable::build(&label, &p, q, cutoff).map_err(|e| e.to_string())?;
            for proj in &grid {
                let f = pairing_formula(&label, proj, &p);
                out.push((
                    p.clone(),
                    format!("h={} r={:?} α={:?}", label.h, label.r, proj.alpha),
                    f,
                    table.pairing(proj),
                    table.tail_bound(proj),
                ));
            }
        }
    }
    Ok(out)
}

fn pairing_theorem() -> Outcome {
    let rows = match exhaustive(0.5) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let nonzero = rows.iter().filter(|r| r.2 != 0).count();
    for (p, what, f, o, tail) in &rows {
        if tail >= &TAIL_MAX || o.round() as i64 != *f || (o - *f as f64).abs() > PAIRING_TOL {
            return fail(format!("p = {p:?} {what}: formula {f}, oracle {o}, tail {tail}"));
        }
    }
    pass(format!("{} pairings, {nonzero} nonzero, zero mismatches", rows.len()))
}

fn dual_families(q: f64) -> Result<Vec<(Vec<u32>, Vec<Vec<f64>>)>, String> {
    let mut out = Vec::new();
    for p in vectors(1..=3, 3) {
        let d = dual_family(&p, q).map_err(|e| e.to_string())?;
        if !d.is_signed_identity() {
            return Err(format!("p = {p:?}: matrix {:?}", d.matrix));
        }
        out.push((p, d.matrix));
    }
    Ok(out)
}

fn dual_family_check() -> Outcome {
    match dual_families(0.5) {
        Ok(v) => {
            let total: usize = v.iter().map(|(_, m)| m.len()).sum();
            pass(format!("{} weight vectors, {total} labels, all diagonal (-1)^m", v.len()))
        }
        Err(e) => fail(e),
    }
}

fn connection_check() -> Outcome {
    let mut checked = 0;
    for p in vectors(1..=2, 3) {
        for k in -3..=3 {
            match strong_connection(k, &p) {
                Ok(sc) if sc.grades_ok() => checked += 1,
                Ok(_) => return fail(format!("p = {p:?}, k = {k}: grades")),
                Err(e) => return fail(format!("p = {p:?}, k = {k}: {e}")),
            }
        }
        let e = match idempotent(1, &p) {
            Ok(e) => e,
            Err(e) => return fail(e.to_string()),
        };
        if !e.is_idempotent() || !e.is_coinvariant(&p) {
            return fail(format!("E_1 for p = {p:?} is not a coinvariant idempotent"));
        }
    }
    pass(format!("{checked} connections exact, E_1 idempotent with grade-0 entries"))
}

fn coefficients_check() -> Outcome {
    for (p0, p1) in [(1u32, 2u32), (2, 3), (3, 4)] {
        let p = [p0, p1];
        if !verify_coeffs(&p, &coeffs_n1_closed(p0, p1), Side::A) {
            return fail(format!("closed form fails for {p:?}"));
        }
        if !verify_coeffs(&p, &connection_coeffs(&p, Side::A), Side::A) {
            return fail(format!("recursion fails for {p:?}"));
        }
    }
    pass("closed form and recursion exact for (1,2), (2,3), (3,4)")
}

fn classification_check() -> Outcome {
    let w = |v: &[u64]| WeightVector::from_u64(v).unwrap();
    let cpn = [(&[1u64, 2, 2][..], true), (&[2, 3, 6][..], true), (&[1, 1, 2][..], false)];
    for (v, want) in cpn {
        if is_cpn(&w(v)).unwrap() != want {
            return fail(format!("is_cpn({v:?}) should be {want}"));
        }
    }
    match generation_test(&w(&[1, 2, 3])) {
        Ok(Generation::NotGenerated(c)) => {
            let len: u64 = c.exponents.iter().map(|x| x.unsigned_abs()).sum();
            if c.grade != 0 || len != 3 {
                return fail(format!("certificate {} has grade {} and length {len}", c.monomial, c.grade));
            }
            pass(format!("is_cpn verdicts correct, certificate {}", c.monomial))
        }
        _ => fail("(1,2,3) reported as generated"),
    }
}

fn qcombinatorics_check() -> Outcome {
    for m in 0..=8u32 {
        let prod = binomial_generating_product(m);
        for k in 0..=m {
            let b = q_binomial(m, k).unwrap();
            if prod.coeff(k as usize) != b.clone().shift(k as i32 * (m as i32 - 1)) {
                return fail(format!("generating identity at m={m}, k={k}"));
            }
            if b.invert_q() != b {
                return fail(format!("[{m} {k}] not invariant under q ↦ 1/q"));
            }
        }
    }
    for p0 in 0..=6 {
        if f_poly(p0) != f_product(p0) {
            return fail(format!("f identity at p0={p0}"));
        }
    }
    pass("generating identity, inversion symmetry (m ≤ 8), f identity (p0 ≤ 6)")
}

fn spectral_check() -> Outcome {
    for n in 1..=4 {
        for l in 0..=12 {
            if multiplicity(n, l) != multiplicity_by_enumeration(n, l) {
                return fail(format!("multiplicity n={n}, λ={l}"));
            }
        }
    }
    let shifts: [(usize, Vec<i64>); 4] = [(1, vec![2]), (2, vec![1, 0]), (2, vec![1, 3]), (3, vec![0, 2, 1])];
    for (dim, k) in &shifts {
        // dyadic weights keep the check exact in floating point
        let d = derivation_defect(*dim, k, |m| 0.5f64.powi(m.iter().sum::<u32>() as i32), 12);
        if d != 0.0 {
            return fail(format!("[|D|, S] ≠ ‖k‖ S for k = {k:?}: {d:e}"));
        }
    }
    let mut worst = (0.0f64, 0.0f64);
    for p in [vec![1u32, 1, 1], vec![2, 1, 3], vec![1, 2, 1]] {
        let spec = DiracSpec::new(2, LambdaKind::Identity, 16).unwrap();
        let l: Vec<u64> = lens_weights(&p).unwrap().iter().map(|&x| x as u64).collect();
        for r in remainders(&p[..2]) {
            let label = qwps::fredholm::FredholmLabel::new(2, r, &p).unwrap();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let prof = match commutator_profile(&xi(&l, i, j), &spec, &p, &label, 0.5, &[8, 12, 16]) {
                    Ok(x) => x,
                    Err(e) => return fail(e.to_string()),
                };
                if !prof.bounded_by_envelope() {
                    return fail(format!("ξ_{i}{j}, p = {p:?}: {} > {}", prof.max_norm(), prof.max_envelope()));
                }
                worst = (worst.0.max(prof.max_norm()), worst.1.max(prof.max_envelope()));
            }
        }
    }
    pass(format!("multiplicities, derivation exact, profiles ≤ envelope (max {:.3} ≤ {:.3})", worst.0, worst.1))
}

fn q_independence() -> Outcome {
    let mut compared = 0;
    for p in vectors(1..=2, 3) {
        let vals = match e1_pairings(&p, &QS) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        let first: Vec<i64> = vals.iter().filter(|v| v.0 == QS[0]).map(|v| v.2.round() as i64).collect();
        for &q in &QS[1..] {
            let other: Vec<i64> = vals.iter().filter(|v| v.0 == q).map(|v| v.2.round() as i64).collect();
            if other != first || vals.iter().any(|v| v.3 >= TAIL_MAX) {
                return fail(format!("E_1 pairings for {p:?} depend on q"));
            }
            compared += other.len();
        }
    }
    let mut runs = Vec::new();
    for &q in &QS {
        match exhaustive(q) {
            Ok(r) => runs.push(r),
            Err(e) => return fail(e),
        }
    }
    for (a, b) in runs[0].iter().zip(&runs[1]).chain(runs[0].iter().zip(&runs[2])) {
        if a.3.round() != b.3.round() || b.4 >= TAIL_MAX {
            return fail(format!("p = {:?} {}: {} vs {}", a.0, a.1, a.3, b.3));
        }
        compared += 1;
    }
    let mut duals = Vec::new();
    for &q in &QS {
        match dual_families(q) {
            Ok(d) => duals.push(d),
            Err(e) => return fail(format!("q = {q}: {e}")),
        }
    }
    for d in &duals[1..] {
        for ((p, m1), (_, m2)) in duals[0].iter().zip(d) {
            let round = |m: &Vec<Vec<f64>>| m.iter().flatten().map(|x| x.round() as i64).collect::<Vec<_>>();
            if round(m1) != round(m2) {
                return fail(format!("dual family for {p:?} depends on q"));
            }
            compared += m1.len() * m1.len();
        }
    }
    pass(format!("{compared} comparisons agree across q ∈ {QS:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("relation suite", relation_suite),
        ("line bundle pairing", prop_pairing),
        ("pairing theorem, exhaustive", pairing_theorem),
        ("dual family diagonal", dual_family_check),
        ("strong connection", connection_check),
        ("n = 1 coefficients", coefficients_check),
        ("weight classification", classification_check),
        ("q-combinatorics", qcombinatorics_check),
        ("spectral", spectral_check),
        ("q-independence", q_independence),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!out.ok);
        println!("{tag} {:>2} {name}: {} [{:.1}s]", i + 1, out.detail, start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
