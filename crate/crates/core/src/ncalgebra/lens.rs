//! Generators and relations of the quantum lens space algebra.
//!
//! For a pairwise coprime `p` the lens algebra is generated by
//! `x_i = z_i z_i*` and `ζ_i = z_i^{p_i}`. Relations are stored as pairs of
//! [`Expr`] (sums of words) so that they can be checked both in the normal
//! form engine and numerically in representations.

use crate::poly::{Exps, Poly};
use crate::qarith::{q_binomial, q_int, Laurent};

use super::element::Element;
use super::monomial::Gen;

/// `x_i = z_i z_i*`.
pub fn x(n: usize, i: usize) -> Element {
    &Element::z(n, i) * &Element::zs(n, i)
}

/// `X_i = Σ_{j>i} x_j`; zero for `i = n`.
pub fn big_x(n: usize, i: usize) -> Element {
    (i + 1..=n).fold(Element::zero(n), |acc, j| &acc + &x(n, j))
}

pub fn z_pow(n: usize, i: usize, k: u32) -> Element {
    Element::z(n, i).pow(k)
}

pub fn zs_pow(n: usize, i: usize, k: u32) -> Element {
    Element::zs(n, i).pow(k)
}

/// `ζ_i = z_i^{p_i}`.
pub fn zeta(n: usize, p: &[u32], i: usize) -> Element {
    z_pow(n, i, p[i])
}

pub fn zeta_star(n: usize, p: &[u32], i: usize) -> Element {
    zs_pow(n, i, p[i])
}

/// `ξ_{i,j} = (z_i*)^{ℓ_{j:i}} z_j^{ℓ_{i:j}}`.
pub fn xi(l: &[u64], i: usize, j: usize) -> Element {
    let n = l.len() - 1;
    let g = num_integer::gcd(l[i], l[j]);
    let (lji, lij) = ((l[j] / g) as u32, (l[i] / g) as u32);
    &zs_pow(n, i, lji) * &z_pow(n, j, lij)
}

/// Letters of lens-algebra and sphere-algebra words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Z(usize),
    Zs(usize),
    X(usize),
    Zeta(usize),
    ZetaStar(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::Z(i) | Letter::Zs(i) | Letter::X(i) | Letter::Zeta(i) | Letter::ZetaStar(i) => i,
        }
    }

    /// Expansion into sphere generators.
    pub fn sphere_word(self, p: &[u32]) -> Vec<Gen> {
        match self {
            Letter::Z(i) => vec![Gen::z(i)],
            Letter::Zs(i) => vec![Gen::zs(i)],
            Letter::X(i) => vec![Gen::z(i), Gen::zs(i)],
            Letter::Zeta(i) => vec![Gen::z(i); p[i] as usize],
            Letter::ZetaStar(i) => vec![Gen::zs(i); p[i] as usize],
        }
    }
}

/// A linear combination of words in [`Letter`]s.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Expr {
    pub terms: Vec<(Laurent, Vec<Letter>)>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Expr::word(&[])
    }

    pub fn word(w: &[Letter]) -> Self {
        Expr { terms: vec![(Laurent::one(), w.to_vec())] }
    }

    pub fn scalar(c: Laurent) -> Self {
        Expr { terms: vec![(c, Vec::new())] }
    }

    pub fn scale(mut self, c: &Laurent) -> Self {
        for t in &mut self.terms {
            t.0 = &t.0 * c;
        }
        self
    }

    pub fn plus(mut self, other: Expr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn minus(self, other: Expr) -> Self {
        self.plus(other.scale(&Laurent::from_int(-1)))
    }

    /// Concatenation product.
    pub fn times(&self, other: &Expr) -> Self {
        let mut terms = Vec::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                terms.push((a * b, w));
            }
        }
        Expr { terms }
    }

    /// A polynomial in the commuting `x_0, …, x_n` (variable `v` is `x_v`).
    pub fn from_x_poly(poly: &Poly) -> Self {
        let terms = poly
            .terms()
            .map(|(e, c)| {
                let w = e.iter().enumerate().flat_map(|(v, &k)| std::iter::repeat_n(Letter::X(v), k as usize));
                (c.clone(), w.collect())
            })
            .collect();
        Expr { terms }
    }

    pub fn to_element(&self, n: usize, p: &[u32]) -> Element {
        let mut out = Element::zero(n);
        for (c, w) in &self.terms {
            let gens: Vec<Gen> = w.iter().flat_map(|l| l.sphere_word(p)).collect();
            out.add_scaled(&Element::from_word(n, &gens).expect("letters in range"), c);
        }
        out
    }

    /// Whether only lens generators occur.
    pub fn is_lens(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, w)| w.iter().all(|l| !matches!(l, Letter::Z(_) | Letter::Zs(_))))
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Relation {
    fn new(name: String, lhs: Expr, rhs: Expr) -> Self {
        Relation { name, lhs, rhs }
    }

    /// Exact check in the normal form engine.
    pub fn holds(&self, n: usize, p: &[u32]) -> bool {
        self.lhs.to_element(n, p) == self.rhs.to_element(n, p)
    }
}

fn xvar(n: usize, i: usize) -> Poly {
    Poly::var(n + 1, i)
}

/// `X_i` as a polynomial in `x_0, …, x_n`.
pub fn big_x_poly(n: usize, i: usize) -> Poly {
    (i + 1..=n).fold(Poly::zero(n + 1), |acc, j| &acc + &xvar(n, j))
}

/// `∏_{s ∈ range} {x_i + (1 - q^{2 sign s}) X_i}` in `x_0, …, x_n`.
fn x_product(n: usize, i: usize, range: impl Iterator<Item = i32>) -> Poly {
    let bx = big_x_poly(n, i);
    range.fold(Poly::one(n + 1), |acc, e| {
        let f = &xvar(n, i) + &bx.scale(&Laurent::one_minus_q_pow(e));
        &acc * &f
    })
}

/// `Y_i(k) = ∏_{j<k} {x_i + (1 - q^{-2j}) X_i}`, equal to `z_i^k (z_i*)^k`.
pub fn y_poly(n: usize, i: usize, k: u32) -> Poly {
    x_product(n, i, (0..k as i32).map(|j| -2 * j))
}

/// `Z_i(k) = ∏_{1≤j≤k} {x_i + (1 - q^{2j}) X_i}`, equal to `(z_i*)^k z_i^k`.
pub fn zz_poly(n: usize, i: usize, k: u32) -> Poly {
    x_product(n, i, (1..=k as i32).map(|j| 2 * j))
}

/// The commutator `[ζ_i*, ζ_i]` in the form
/// `(q - q^{-1}) Σ_k [p_i k] [p_i k]_q (-q A)^k B^{p_i - k}`.
///
/// With `displayed` set, `(A, B) = (Σ_{j≥i} x_j, Σ_{j>i} x_j)`; otherwise the
/// two sums are exchanged, which is what expanding `ζ_i* ζ_i - ζ_i ζ_i*`
/// through the product formulas gives.
pub fn zeta_commutator_poly(n: usize, p: &[u32], i: usize, displayed: bool) -> Poly {
    let pi = p[i];
    let upper = big_x_poly(n, i);
    let full = &xvar(n, i) + &upper;
    let (a, b) = if displayed { (full, upper) } else { (upper, full) };
    let mut sum = Poly::zero(n + 1);
    for k in 0..=pi {
        let c = &q_binomial(pi, k).expect("k <= p_i") * &q_int(pi * k);
        let term = &a.scale(&-Laurent::q_pow(1)).pow(k) * &b.pow(pi - k);
        sum = &sum + &term.scale(&c);
    }
    sum.scale(&(Laurent::q_pow(1) - Laurent::q_pow(-1)))
}

/// The relations of the lens algebra for `p`, each named.
pub fn lens_relations(p: &[u32]) -> Vec<Relation> {
    use Letter::*;
    let n = p.len() - 1;
    let w = Expr::word;
    let pw = |e: i64| Laurent::q_pow(e as i32);
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            if i < j {
                out.push(Relation::new(format!("x-commute[{i},{j}]"), w(&[X(i), X(j)]), w(&[X(j), X(i)])));
                out.push(Relation::new(format!("x-zeta-lower[{i},{j}]"), w(&[X(i), Zeta(j)]), w(&[Zeta(j), X(i)])));
                out.push(Relation::new(
                    format!("x-zeta-upper[{i},{j}]"),
                    w(&[X(j), Zeta(i)]),
                    w(&[Zeta(i), X(j)]).scale(&pw(2 * p[i] as i64)),
                ));
                out.push(Relation::new(
                    format!("zeta-zeta[{i},{j}]"),
                    w(&[Zeta(i), Zeta(j)]),
                    w(&[Zeta(j), Zeta(i)]).scale(&pw(-(p[i] as i64 * p[j] as i64))),
                ));
            }
            if i != j {
                out.push(Relation::new(
                    format!("zetastar-zeta[{i},{j}]"),
                    w(&[ZetaStar(i), Zeta(j)]),
                    w(&[Zeta(j), ZetaStar(i)]).scale(&pw(p[i] as i64 * p[j] as i64)),
                ));
            }
        }
        let big = Expr::from_x_poly(&big_x_poly(n, i));
        out.push(Relation::new(
            format!("x-zeta-same[{i}]"),
            w(&[X(i), Zeta(i)]).minus(w(&[Zeta(i), X(i)])),
            w(&[Zeta(i)]).times(&big).scale(&Laurent::one_minus_q_pow(2 * p[i] as i32)),
        ));
        out.push(Relation::new(
            format!("zeta-zetastar[{i}]"),
            w(&[Zeta(i), ZetaStar(i)]),
            Expr::from_x_poly(&y_poly(n, i, p[i])),
        ));
        out.push(Relation::new(
            format!("zetastar-zeta-product[{i}]"),
            w(&[ZetaStar(i), Zeta(i)]),
            Expr::from_x_poly(&zz_poly(n, i, p[i])),
        ));
    }
    let sum = (0..=n).fold(Expr::zero(), |acc, i| acc.plus(w(&[X(i)])));
    out.push(Relation::new("partition".into(), sum, Expr::one()));
    out
}

/// Sphere identities behind the lens relations, for `1 ≤ k ≤ kmax`.
pub fn sphere_identities(n: usize, kmax: u32) -> Vec<Relation> {
    use Letter::*;
    let mut out = Vec::new();
    let zk = |i: usize, k: u32| Expr::word(&vec![Z(i); k as usize]);
    let zsk = |i: usize, k: u32| Expr::word(&vec![Zs(i); k as usize]);
    for i in 0..=n {
        let big = Expr::from_x_poly(&big_x_poly(n, i));
        out.push(Relation::new(
            format!("bigx-z[{i}]"),
            big.times(&zk(i, 1)),
            zk(i, 1).times(&big).scale(&Laurent::q_pow(2)),
        ));
        for k in 1..=kmax {
            let c = Laurent::one_minus_q_pow(2 * k as i32);
            out.push(Relation::new(
                format!("zstar-zpow[{i},{k}]"),
                zsk(i, 1).times(&zk(i, k)).minus(zk(i, k).times(&zsk(i, 1))),
                zk(i, k - 1).times(&big).scale(&c),
            ));
            out.push(Relation::new(
                format!("z-zstarpow[{i},{k}]"),
                zk(i, 1).times(&zsk(i, k)).minus(zsk(i, k).times(&zk(i, 1))),
                big.times(&zsk(i, k - 1)).scale(&-c),
            ));
            out.push(Relation::new(
                format!("y-product[{i},{k}]"),
                zk(i, k).times(&zsk(i, k)),
                Expr::from_x_poly(&y_poly(n, i, k)),
            ));
            out.push(Relation::new(
                format!("z-product[{i},{k}]"),
                zsk(i, k).times(&zk(i, k)),
                Expr::from_x_poly(&zz_poly(n, i, k)),
            ));
        }
    }
    out
}

/// Result of comparing the two readings of the `[ζ_i*, ζ_i]` formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorReading {
    pub index: usize,
    pub displayed_matches: bool,
    pub exchanged_matches: bool,
}

pub fn zeta_commutator_readings(p: &[u32]) -> Vec<CommutatorReading> {
    let n = p.len() - 1;
    (0..=n)
        .map(|i| {
            let actual = zeta_star(n, p, i).commutator(&zeta(n, p, i));
            let check = |displayed| Expr::from_x_poly(&zeta_commutator_poly(n, p, i, displayed)).to_element(n, p) == actual;
            CommutatorReading { index: i, displayed_matches: check(true), exchanged_matches: check(false) }
        })
        .collect()
}

/// Embeds polynomials in `x_1, …, x_n` (with `x_0 = 1 - Σ x_j` eliminated)
/// into the sphere algebra, caching powers of each `x_i`.
pub struct XEmbedding {
    n: usize,
    powers: Vec<Vec<Element>>,
}

impl XEmbedding {
    pub fn new(n: usize) -> Self {
        XEmbedding { n, powers: (0..n).map(|_| vec![Element::one(n)]).collect() }
    }

    fn power(&mut self, v: usize, k: u32) -> Element {
        while self.powers[v].len() <= k as usize {
            let next = self.powers[v].last().unwrap() * &x(self.n, v + 1);
            self.powers[v].push(next);
        }
        self.powers[v][k as usize].clone()
    }

    fn monomial(&mut self, e: &Exps) -> Element {
        let mut out = Element::one(self.n);
        for (v, &k) in e.iter().enumerate() {
            if k > 0 {
                out = &out * &self.power(v, k);
            }
        }
        out
    }

    pub fn embed(&mut self, poly: &Poly) -> Element {
        assert_eq!(poly.nvars(), self.n);
        let mut out = Element::zero(self.n);
        for (e, c) in poly.terms() {
            let m = self.monomial(e);
            out.add_scaled(&m, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_small() {
        for p in [vec![1u32, 2], vec![2, 3], vec![2, 1, 3]] {
            let n = p.len() - 1;
            for r in lens_relations(&p) {
                assert!(r.holds(n, &p), "{} for {:?}", r.name, p);
            }
        }
        for r in sphere_identities(2, 3) {
            assert!(r.holds(2, &[1, 1, 1]), "{}", r.name);
        }
    }

    #[test]
    fn commutator_readings() {
        let readings = zeta_commutator_readings(&[2, 3, 1]);
        assert!(readings.iter().all(|r| r.exchanged_matches));
        assert!(readings.iter().any(|r| !r.displayed_matches));
    }

    #[test]
    fn xi_of_sharp_weights() {
        // ℓ = p♯ for p = (2, 3): ξ_{0,1} = ζ_0* ζ_1
        let p = [2u32, 3];
        let l = [3u64, 2];
        assert_eq!(xi(&l, 0, 1), &zeta_star(1, &p, 0) * &zeta(1, &p, 1));
        assert_eq!(xi(&l, 1, 1), &Element::zs(1, 1) * &Element::z(1, 1));
    }
}
