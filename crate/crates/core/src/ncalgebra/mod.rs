//! The quantum odd sphere algebra and its invariant subalgebras.
//!
//! Generators `z_0, …, z_n` and their adjoints satisfy, for `0 < q < 1`,
//! `z_i z_j = q^{-1} z_j z_i` (`i < j`), `z_i* z_j = q z_j z_i*` (`i ≠ j`),
//! `[z_i*, z_i] = (1 - q²) Σ_{j>i} z_j z_j*`, `[z_n*, z_n] = 0` and
//! `Σ z_i z_i* = 1`. Elements are kept in the normal-ordered basis
//! described in [`Monomial`].

pub mod coeffs;
mod element;
pub mod lens;
mod engine;
pub mod generation;
mod monomial;
mod rewrite;

pub use element::Element;
pub use engine::clear_caches;
pub use monomial::{parse_word, Gen, Monomial};
pub use generation::{bezout_opposite_sign, generation_test, Certificate, Generation};
pub use rewrite::normal_form_by_rewriting;

/// `true` iff `lhs - rhs` reduces to exactly zero.
pub fn verify_relation(lhs: &Element, rhs: &Element) -> bool {
    (lhs - rhs).is_zero()
}
