//! Sparse operators stored column by column.

use std::collections::BTreeMap;
use std::fmt::Write;

use rayon::prelude::*;

use crate::error::Result;

use super::{norm1, Amp, State, StateVector};

/// A sparse operator on the span of `|m⟩` with `‖m‖₁ ≤ cutoff`.
///
/// `columns[m]` lists the nonzero `⟨s|T|m⟩`. Images that leave the cutoff
/// are counted in `dropped` rather than silently lost.
#[derive(Clone, Debug, Default)]
pub struct ShiftOperator {
    pub cutoff: u32,
    pub columns: BTreeMap<State, Vec<(State, Amp)>>,
    pub dropped: usize,
}

impl ShiftOperator {
    pub fn from_columns<F>(cutoff: u32, basis: &[State], col: F) -> Result<Self>
    where
        F: Fn(&State) -> Result<StateVector> + Sync,
    {
        let cols: Vec<(State, StateVector)> =
            basis.par_iter().map(|m| Ok((m.clone(), col(m)?))).collect::<Result<_>>()?;
        let mut op = ShiftOperator { cutoff, ..Default::default() };
        for (m, image) in cols {
            let mut kept = Vec::with_capacity(image.len());
            for (s, a) in image {
                if norm1(&s) > cutoff {
                    op.dropped += 1;
                } else {
                    kept.push((s, a));
                }
            }
            op.columns.insert(m, kept);
        }
        Ok(op)
    }

    /// `S(k, c)|m⟩ = c(m)|m + k⟩`, zero when `m + k` leaves `ℕ^n`.
    pub fn weighted_shift<F>(dim: usize, k: &[i64], c: F, cutoff: u32) -> Self
    where
        F: Fn(&[u32]) -> f64,
    {
        let mut op = ShiftOperator { cutoff, ..Default::default() };
        for m in super::lattice_points(dim, cutoff) {
            let target: Option<State> = m
                .iter()
                .zip(k)
                .map(|(&a, &b)| u32::try_from(a as i64 + b).ok())
                .collect();
            let mut col = Vec::new();
            if let Some(t) = target {
                let v = c(&m);
                if v != 0.0 {
                    if norm1(&t) > cutoff {
                        op.dropped += 1;
                    } else {
                        col.push((t, Amp::new(v, 0.0)));
                    }
                }
            }
            op.columns.insert(m, col);
        }
        op
    }

    /// `|m⟩ ↦ d(m)|m⟩` on the same basis.
    pub fn diagonal<F>(&self, d: F) -> Self
    where
        F: Fn(&[u32]) -> f64,
    {
        let columns = self.columns.keys().map(|m| (m.clone(), vec![(m.clone(), Amp::new(d(m), 0.0))])).collect();
        ShiftOperator { cutoff: self.cutoff, columns, dropped: 0 }
    }

    pub fn entry(&self, row: &[u32], col: &[u32]) -> Amp {
        self.columns
            .get(col)
            .and_then(|c| c.iter().find(|(s, _)| s.as_slice() == row).map(|(_, a)| *a))
            .unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.columns.values().map(Vec::len).sum()
    }

    /// `self ∘ other` on the common basis; images of `other` outside the
    /// basis are dropped and counted.
    pub fn compose(&self, other: &ShiftOperator) -> ShiftOperator {
        let mut out = ShiftOperator { cutoff: self.cutoff.min(other.cutoff), ..Default::default() };
        out.dropped = self.dropped + other.dropped;
        for (m, col) in &other.columns {
            let mut acc = StateVector::new();
            for (s, a) in col {
                match self.columns.get(s) {
                    Some(c2) => {
                        for (t, b) in c2 {
                            *acc.entry(t.clone()).or_default() += a * b;
                        }
                    }
                    None => out.dropped += 1,
                }
            }
            out.columns.insert(m.clone(), acc.into_iter().filter(|(_, v)| v.norm() != 0.0).collect());
        }
        out
    }

    pub fn sub(&self, other: &ShiftOperator) -> ShiftOperator {
        let mut out = ShiftOperator { cutoff: self.cutoff.min(other.cutoff), ..Default::default() };
        out.dropped = self.dropped + other.dropped;
        for m in self.columns.keys().chain(other.columns.keys()) {
            if out.columns.contains_key(m) {
                continue;
            }
            let mut acc = StateVector::new();
            for (s, a) in self.columns.get(m).into_iter().flatten() {
                *acc.entry(s.clone()).or_default() += a;
            }
            for (s, a) in other.columns.get(m).into_iter().flatten() {
                *acc.entry(s.clone()).or_default() -= a;
            }
            out.columns.insert(m.clone(), acc.into_iter().filter(|(_, v)| v.norm() != 0.0).collect());
        }
        out
    }

    /// Largest column norm; a lower bound for the operator norm.
    pub fn max_column_norm(&self) -> f64 {
        self.columns
            .values()
            .map(|c| c.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.columns.values().flatten().map(|(_, a)| a.norm()).fold(0.0, f64::max)
    }

    /// Coordinate format: one `row col re im` line per nonzero entry, with
    /// basis labels written as comma separated lattice points.
    pub fn to_coo(&self) -> String {
        let label = |m: &State| m.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let mut out = String::from("# row col re im\n");
        for (m, col) in &self.columns {
            for (s, a) in col {
                let _ = writeln!(out, "{} {} {:.17e} {:.17e}", label(s), label(m), a.re, a.im);
            }
        }
        out
    }
}
