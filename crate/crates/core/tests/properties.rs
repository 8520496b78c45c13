use num_bigint::BigInt;
use proptest::prelude::*;

use qwps::config::RunConfig;
use qwps::fredholm::{labels, pairing_formula, OracleTable, ProjectionLabel};
use qwps::ncalgebra::{bezout_opposite_sign, normal_form_by_rewriting, Element, Gen};
use qwps::qarith::{q_binomial, Laurent, Rational};
use qwps::spectral::{derivation_defect, multiplicity};
use qwps::weights::{factor_sharp, pairwise_coprime_vectors, sharp, WeightVector};

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-6i32..6, -5i64..5), 0..5)
        .prop_map(|t| Laurent::from_terms(t.into_iter().map(|(e, c)| (e, Rational::from_integer(c.into())))))
}

fn word(n: usize, len: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec((0..=n, any::<bool>()), 0..=len)
        .prop_map(|v| v.into_iter().map(|(i, s)| if s { Gen::zs(i) } else { Gen::z(i) }).collect())
}

fn small_p() -> impl Strategy<Value = Vec<u32>> {
    let all: Vec<Vec<u32>> = (2..=4).flat_map(|len| pairwise_coprime_vectors(len, 3)).collect();
    prop::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).invert_q(), &a.invert_q() * &b.invert_q());
        prop_assert_eq!(a.invert_q().invert_q(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn q_binomial_symmetries(m in 0u32..10, k in 0u32..10) {
        prop_assume!(k <= m);
        let b = q_binomial(m, k).unwrap();
        prop_assert_eq!(b.invert_q(), b.clone());
        prop_assert_eq!(q_binomial(m, m - k).unwrap(), b);
    }

    #[test]
    fn bezout_certificate(a in 1i64..200, b in 1i64..200, k in 1i64..50) {
        let (r, s) = bezout_opposite_sign(&a.into(), &b.into(), &k.into()).unwrap();
        let g = num_integer::gcd(a, b);
        prop_assert_eq!(&r * a + &s * b, BigInt::from(k * g));
        prop_assert!(r < BigInt::from(0) && s > BigInt::from(0));
    }

    #[test]
    fn sharp_factorisation_round_trip(p in small_p()) {
        let w = WeightVector::from_u64(&p.iter().map(|&x| x as u64).collect::<Vec<_>>()).unwrap();
        let l = sharp(&w);
        let back = factor_sharp(&l).unwrap().expect("ℓ = p♯ factors");
        prop_assert_eq!(back.weights(), &w);
    }

    #[test]
    fn engine_agrees_with_rewriting(w in word(2, 6)) {
        prop_assert_eq!(Element::from_word(2, &w).unwrap(), normal_form_by_rewriting(2, &w).unwrap());
    }

    #[test]
    fn multiplication_is_associative_and_adjoint_reverses(a in word(2, 3), b in word(2, 3), c in word(2, 3)) {
        let (x, y, z) = (Element::from_word(2, &a).unwrap(), Element::from_word(2, &b).unwrap(), Element::from_word(2, &c).unwrap());
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
    }

    #[test]
    fn weighted_shifts_are_derivation_eigenvectors(k in prop::collection::vec(-2i64..3, 1..4), e in 0i32..4) {
        let d = derivation_defect(k.len(), &k, |m| 0.5f64.powi(e + m[0] as i32), 8);
        prop_assert_eq!(d, 0.0);
    }

    #[test]
    fn multiplicities_sum_to_simplex(n in 1usize..5, c in 0u32..13) {
        let total: u64 = (0..=c).map(|t| multiplicity(n, t)).sum();
        prop_assert_eq!(total, multiplicity(n + 1, c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_matches_closed_form(p in small_p(), pick in any::<prop::sample::Index>(), alpha in prop::collection::vec(0u32..5, 1..4), q in 0.2f64..0.8) {
        let n = p.len() - 1;
        prop_assume!(alpha.len() <= n);
        let labs = labels(&p);
        let label = pick.get(&labs);
        let proj = ProjectionLabel::new(alpha).unwrap();
        let total: u32 = proj.alpha.iter().sum();
        let table = OracleTable::build(label, &p, q, (label.h as u32 * total).max(4)).unwrap();
        prop_assert_eq!(table.tail_bound(&proj), 0.0);
        prop_assert_eq!(table.pairing(&proj), pairing_formula(label, &proj, &p) as f64);
    }

    #[test]
    fn config_validation_rejects_bad_q(q in prop_oneof![-1.0f64..=0.0, 1.0f64..2.0]) {
        prop_assert!(RunConfig::default().with_q(q).validate().is_err());
    }
}
