use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Numerical settings shared by the trace and pairing computations.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub q: f64,
    /// Initial truncation on `‖m‖₁`.
    pub cutoff: u32,
    pub tolerance_relations: f64,
    pub tolerance_traces: f64,
    /// Automatic cutoff increases stop here.
    pub max_cutoff: u32,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: 0.5,
            cutoff: 12,
            tolerance_relations: 1e-10,
            tolerance_traces: 1e-6,
            max_cutoff: 400,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::precondition(format!("q = {} is not in (0, 1)", self.q)));
        }
        if self.cutoff < 4 {
            return Err(Error::precondition("cutoff must be at least 4"));
        }
        if !(self.tolerance_relations > 0.0 && self.tolerance_traces > 0.0) {
            return Err(Error::precondition("tolerances must be positive"));
        }
        if self.max_cutoff < self.cutoff {
            return Err(Error::precondition("max_cutoff is below cutoff"));
        }
        Ok(())
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = q;
        self
    }
}

/// Parses `0.5` or `1/2`.
pub fn parse_q(s: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("cannot read q from {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            Ok(a / b)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}
