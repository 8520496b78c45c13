use super::*;
use crate::ncalgebra::lens::{lens_relations, Expr};
use crate::ncalgebra::{parse_word, Element};

fn states(basis: Vec<BasisState>) -> Vec<State> {
    basis.into_iter().map(|b| b.m).collect()
}

#[test]
fn sphere_generators() {
    let q = 0.5;
    let rep = SphereRep::twisted(2, q, Complex64::from_polar(1.0, 0.3)).unwrap();
    let (s, a) = rep.letter(Letter::Z(0), &[0, 0]).unwrap().unwrap();
    assert_eq!(s, vec![1, 0]);
    assert!((a.re - (1.0 - q * q).sqrt()).abs() < 1e-15);
    let (s, a) = rep.letter(Letter::Z(2), &[1, 2]).unwrap().unwrap();
    assert_eq!(s, vec![1, 2]);
    assert!((a - Complex64::from_polar(q.powi(3), 0.3)).norm() < 1e-15);
    let one = Expr::word(&[Letter::Z(0), Letter::Zs(0)])
        .plus(Expr::word(&[Letter::Z(1), Letter::Zs(1)]))
        .plus(Expr::word(&[Letter::Z(2), Letter::Zs(2)]));
    let rel = Relation { name: "sphere".into(), lhs: one, rhs: Expr::one() };
    assert!(relation_defect(&rep, &rel, &lattice_points(2, 10)).unwrap() < 1e-12);
}

#[test]
fn normal_form_matches_word_action() {
    let rep = SphereRep::new(2, 0.5).unwrap();
    for w in ["z1* z0 z2 z1", "z0* z0 z1*", "z2* z1* z1 z2 z0", "z1 z1* z1* z1 z0*"] {
        let word = parse_word(w).unwrap();
        let a = NumericElement::new(&Element::from_word(2, &word).unwrap(), rep.q);
        let letters: Vec<Letter> =
            word.iter().map(|g| if g.star { Letter::Zs(g.index) } else { Letter::Z(g.index) }).collect();
        for m in lattice_points(2, 6) {
            let got = apply_basis(&rep, &a, &m).unwrap();
            let want = apply_word(&rep, &letters, &m).unwrap();
            let diff = match want {
                Some((s, amp)) => {
                    let g = got.get(&s).copied().unwrap_or_default();
                    (g - amp).norm() + got.iter().filter(|(t, _)| **t != s).map(|(_, v)| v.norm()).sum::<f64>()
                }
                None => got.values().map(|v| v.norm()).sum(),
            };
            assert!(diff < 1e-12, "{w} at {m:?}");
        }
    }
}

#[test]
fn lens_irrep_relations_and_relabelling() {
    let p = [2u32, 1, 3];
    for r in [[0u32, 0], [1, 0]] {
        let rep = lens_irrep(&p, &r, 0.5).unwrap();
        let basis = states(lens_basis(2, &r, 12));
        for rel in lens_relations(&p) {
            let d = relation_defect(&rep, &rel, &basis).unwrap();
            assert!(d < 1e-10, "{} defect {d}", rel.name);
        }
        let sphere = SphereRep::new(2, 0.5).unwrap().with_weights(&p).unwrap();
        for m in &basis {
            for l in [Letter::X(0), Letter::X(1), Letter::X(2), Letter::Zeta(0), Letter::Zeta(1), Letter::Zeta(2)] {
                let nz = |x: Option<(State, Amp)>| x.filter(|(_, a)| a.norm() != 0.0);
                let a = nz(rep.letter(l, m).unwrap());
                let b = nz(sphere.letter(l, &sphere_state(&p, &r, m)).unwrap());
                match (a, b) {
                    (Some((s, x)), Some((t, y))) => {
                        assert_eq!(sphere_state(&p, &r, &s), t);
                        assert!((x - y).norm() < 1e-14);
                    }
                    (None, None) => {}
                    other => panic!("{l:?} at {m:?}: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn pi_k_relations_and_monomial_decomposition() {
    let p = [2u32, 3, 1];
    let r = [1u32, 2];
    for k in 0..=2 {
        let rep = PiRep::new(2, k, &p, &r, 0.5).unwrap();
        let basis = states(subspace_basis(2, k, 10));
        for rel in lens_relations(&p) {
            let d = relation_defect(&rep, &rel, &basis).unwrap();
            assert!(d < 1e-10, "k={k} {} defect {d}", rel.name);
            // the same relation sides, normal-ordered in the sphere algebra
            for side in [&rel.lhs, &rel.rhs] {
                let a = NumericElement::new(&side.to_element(2, &p), rep.q);
                for m in &basis {
                    let via_mono = apply_basis(&rep, &a, m).unwrap();
                    let mut via_words = StateVector::new();
                    for (c, w) in &side.terms {
                        if let Some((s, amp)) = apply_word(&rep, w, m).unwrap() {
                            *via_words.entry(s).or_default() += amp * c.eval_f64(rep.q);
                        }
                    }
                    for s in via_mono.keys().chain(via_words.keys()) {
                        let d = via_mono.get(s).copied().unwrap_or_default() - via_words.get(s).copied().unwrap_or_default();
                        assert!(d.norm() < 1e-10, "k={k} {} at {m:?}", rel.name);
                    }
                }
            }
        }
    }
}

#[test]
fn subspace_geometry() {
    for n in 1..=4usize {
        for j in 0..=n {
            for k in j + 2..=n {
                let a = subspace_basis(n, j, 10);
                assert!(a.iter().all(|b| !is_in_subspace(&b.m, k)));
            }
        }
        for k in 1..=n {
            let direct: Vec<State> = lattice_points(n, 8)
                .into_iter()
                .filter(|m| is_in_subspace(m, k - 1) && is_in_subspace(m, k))
                .collect();
            assert_eq!(states(intersection_basis(n, k, 8)), direct);
        }
    }
    for lambda in 0..=8u32 {
        let count = lattice_points(3, lambda).iter().filter(|m| norm1(m) == lambda).count() as u64;
        let binom = (lambda as u64 + 1) * (lambda as u64 + 2) / 2;
        assert_eq!(count, binom);
    }
}

#[test]
fn matrices_and_truncation() {
    let rep = SphereRep::new(1, 0.5).unwrap();
    let zsz = NumericElement::new(&(&Element::zs(1, 0) * &Element::z(1, 0)), rep.q);
    let mat = matrix_of(&rep, &zsz, 6).unwrap();
    for (m, col) in &mat.columns {
        for (s, a) in col {
            assert_eq!(s, m);
            assert!(a.re >= 0.0 && a.re <= 1.0);
        }
    }
    let z0 = NumericElement::new(&Element::z(1, 0), rep.q);
    let mut v = StateVector::new();
    v.insert(vec![6], Amp::new(1.0, 0.0));
    let (_, truncated) = apply(&rep, &z0, &v, 6).unwrap();
    assert!(truncated);
    let one = NumericElement::new(&Element::one(1), rep.q);
    assert_eq!(apply(&rep, &one, &v, 6).unwrap().0, v);
}
