//! Command line front end. The `qwps` binary only forwards to [`main_with_args`].
//!
//! Every JSON record carries `"schema": "qwps/1"`. Exit codes: 1 for usage
//! errors, 2 for violated preconditions, 3 when a verification fails.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::config::{parse_q, OutputFormat, RunConfig};
use crate::connection::{idempotent, nontriviality_certificate, strong_connection};
use crate::error::{Error, Result};
use crate::fredholm::{pairing_table, remainders, FredholmLabel, PairingReport};
use crate::ncalgebra::lens::{lens_relations, sphere_identities, xi};
use crate::ncalgebra::{generation_test, Generation};
use crate::repr::{lens_basis, lens_irrep, relation_defect, State};
use crate::spectral::{
    commutator_profile, multiplicity, multiplicity_by_enumeration, zeta_partial, DiracSpec, LambdaKind,
};
use crate::weights::{factor_sharp, is_cpn, path_to_trivial, WeightVector};

pub const SCHEMA: &str = "qwps/1";

#[derive(Parser, Debug)]
#[command(name = "qwps", version, about = "Quantum weighted projective spaces and lens spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    /// Deformation parameter, e.g. 0.5 or 1/2.
    #[arg(long, global = true, default_value = "1/2")]
    pub q: String,
    /// Initial truncation on ‖m‖₁.
    #[arg(long, global = true, default_value_t = 12)]
    pub cutoff: u32,
    #[arg(long, global = true, default_value_t = 400)]
    pub max_cutoff: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coprimality, normalisation, factorisation ℓ = p♯ and admissible moves.
    Classify { weights: Vec<u64> },
    /// The generators ξ_{i,j} and whether they generate the invariant part.
    Generators { weights: Vec<u64> },
    /// Lens space relations, exact and in the irreducible representations.
    Relations {
        p: Vec<u32>,
        #[arg(long, conflicts_with = "numeric")]
        symbolic: bool,
        #[arg(long)]
        numeric: bool,
    },
    /// Index pairings, closed form against the direct trace.
    Pairing {
        p: Vec<u32>,
        /// `h,m,alpha_max`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Strong connection, idempotent and its pairings.
    Connection {
        p: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
    },
    /// Dirac spectrum, commutator profiles and zeta partial sums.
    Spectrum {
        n: usize,
        /// `identity` or `power:d`.
        #[arg(long, default_value = "identity")]
        lambda: String,
        /// Weights used for the commutator profile (default all ones).
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<u32>>,
    },
}

fn record(kind: &str, mut v: Value) -> Value {
    v["schema"] = SCHEMA.into();
    v["kind"] = kind.into();
    v
}

struct Out<'a> {
    w: &'a mut dyn Write,
    format: Format,
}

impl Out<'_> {
    fn emit(&mut self, v: &Value) -> Result<()> {
        let line = match self.format {
            Format::Json => v.to_string(),
            _ => text_line(v),
        };
        self.line(&line)
    }

    // A closed pipe (e.g. `| head`) is not an error; remaining output is dropped.
    fn line(&mut self, s: &str) -> Result<()> {
        match writeln!(self.w, "{s}") {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r.map_err(|e| Error::precondition(format!("write failed: {e}"))),
        }
    }
}

/// `key=value` pairs in key order, skipping the schema tag.
fn text_line(v: &Value) -> String {
    match v.as_object() {
        Some(map) => map
            .iter()
            .filter(|(k, _)| *k != "schema")
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        None => v.to_string(),
    }
}

fn weight_vector(w: &[u64]) -> Result<WeightVector> {
    if w.len() < 2 {
        return Err(Error::Parse("need at least two weights".into()));
    }
    WeightVector::from_u64(w)
}

fn classify(w: &[u64], out: &mut Out) -> Result<i32> {
    let l = weight_vector(w)?;
    let p = factor_sharp(&l)?;
    let path = path_to_trivial(&l).map(|m| m.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    out.emit(&record(
        "classify",
        json!({
            "weights": w,
            "coprime": l.is_coprime(),
            "normalized": l.is_normalized(),
            "pairwise_coprime": l.is_pairwise_coprime(),
            "p": p.map(|p| p.to_string()),
            "is_cpn": is_cpn(&l)?,
            "path": path,
        }),
    ))?;
    Ok(0)
}

fn generators(w: &[u64], out: &mut Out) -> Result<i32> {
    let l = weight_vector(w)?;
    let mut gens = Vec::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            gens.push(format!("xi_{i}{j} = {}", xi(w, i, j)));
        }
    }
    let v = match generation_test(&l)? {
        Generation::Generated(p) => json!({ "weights": w, "generators": gens, "verdict": "GENERATED", "p": p.to_string() }),
        Generation::NotGenerated(c) => json!({
            "weights": w,
            "generators": gens,
            "verdict": "NOT_GENERATED",
            "certificate": c.monomial,
            "triple": c.triple,
            "grade": c.grade,
        }),
    };
    out.emit(&record("generators", v))?;
    Ok(0)
}

fn check_p(p: &[u32]) -> Result<()> {
    if p.len() < 2 {
        return Err(Error::Parse("need at least two entries of p".into()));
    }
    crate::weights::lens_weights(p).map(|_| ())
}

fn relations(p: &[u32], symbolic: bool, numeric: bool, cfg: &RunConfig, out: &mut Out) -> Result<i32> {
    check_p(p)?;
    let n = p.len() - 1;
    let (sym, num) = if symbolic || numeric { (symbolic, numeric) } else { (true, true) };
    let mut failures = 0;
    if sym {
        let mut rels = lens_relations(p);
        rels.extend(sphere_identities(n, 4));
        for rel in &rels {
            let ok = rel.holds(n, p);
            failures += usize::from(!ok);
            out.emit(&record("relation", json!({ "p": p, "mode": "symbolic", "name": rel.name, "holds": ok })))?;
        }
    }
    if num {
        let rels = lens_relations(p);
        for r in remainders(&p[..n]) {
            let rep = lens_irrep(p, &r, cfg.q)?;
            let basis: Vec<State> = lens_basis(n, &r, cfg.cutoff).into_iter().map(|b| b.m).collect();
            for rel in &rels {
                let defect = relation_defect(&rep, rel, &basis)?;
                let ok = defect < cfg.tolerance_relations;
                failures += usize::from(!ok);
                out.emit(&record(
                    "relation",
                    json!({ "p": p, "mode": "numeric", "r": r, "name": rel.name, "defect": defect, "holds": ok }),
                ))?;
            }
        }
    }
    if failures > 0 {
        return Err(Error::Verification(format!("{failures} relation checks failed")));
    }
    Ok(0)
}

fn pairing(p: &[u32], grid: Option<&str>, cfg: &RunConfig, out: &mut Out) -> Result<i32> {
    check_p(p)?;
    let n = p.len() - 1;
    let (h, m, amax) = match grid {
        None => (n, n, 3),
        Some(g) => {
            let parts: Vec<u32> = g
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad grid {g:?}"))))
                .collect::<Result<_>>()?;
            match parts.as_slice() {
                [h, m, a] => (*h as usize, *m as usize, *a),
                _ => return Err(Error::Parse(format!("grid must be h,m,alpha_max, got {g:?}"))),
            }
        }
    };
    if h > n || m == 0 {
        return Err(Error::precondition(format!("grid needs h ≤ {n} and m ≥ 1")));
    }
    let rows = pairing_table(p, h, m, amax, cfg)?;
    if matches!(out.format, Format::Csv) {
        out.line(PairingReport::CSV_HEADER)?;
        for r in &rows {
            out.line(&r.to_csv_row())?;
        }
    } else {
        for r in &rows {
            let mut v = serde_json::to_value(r).expect("plain data");
            v = record("pairing", v);
            out.emit(&v)?;
        }
    }
    let bad = rows.iter().filter(|r| !r.agrees).count();
    if bad > 0 {
        return Err(Error::Verification(format!("{bad} pairings disagree with the closed form")));
    }
    Ok(0)
}

fn connection(p: &[u32], k: i32, cfg: &RunConfig, out: &mut Out) -> Result<i32> {
    check_p(p)?;
    let sc = strong_connection(k, p)?;
    let e = idempotent(k, p)?;
    let l = crate::weights::lens_weights(p)?;
    let idem = e.is_idempotent();
    let coinv = e.is_coinvariant(p);
    out.emit(&record(
        "connection",
        json!({
            "p": p,
            "k": k,
            "terms": sc.omega.len(),
            "recursion_terms": sc.unmerged_terms,
            "identity_holds": true,
            "grades": sc.omega.grades(&l),
            "grades_ok": sc.grades_ok(),
            "idempotent_size": e.size(),
            "idempotent": idem,
            "coinvariant": coinv,
        }),
    ))?;
    if matches!(out.format, Format::Text) {
        out.line(e.to_text().trim_end())?;
    }
    let cert = nontriviality_certificate(p, cfg)?;
    for entry in &cert.entries {
        out.emit(&record(
            "pairing_e1",
            json!({ "p": p, "r": entry.r, "value": entry.value, "tail_bound": entry.tail_bound, "cutoff": entry.cutoff }),
        ))?;
    }
    out.emit(&record("nontriviality", json!({ "p": p, "trivial_value": cert.trivial_value, "nontrivial": cert.nontrivial })))?;
    if !(idem && coinv && sc.grades_ok()) {
        return Err(Error::Verification("idempotent checks failed".into()));
    }
    Ok(0)
}

fn parse_lambda(s: &str) -> Result<LambdaKind> {
    match s.split_once(':') {
        None if s == "identity" => Ok(LambdaKind::Identity),
        Some(("power", d)) => Ok(LambdaKind::Power(d.parse().map_err(|_| Error::Parse(format!("bad exponent {d:?}")))?)),
        _ => Err(Error::Parse(format!("unknown λ {s:?}, expected identity or power:d"))),
    }
}

fn spectrum(n: usize, lambda: &str, p: Option<Vec<u32>>, cfg: &RunConfig, out: &mut Out) -> Result<i32> {
    let spec = DiracSpec::new(n, parse_lambda(lambda)?, cfg.cutoff)?;
    for t in 0..=cfg.cutoff {
        let mu = multiplicity(n, t);
        let count = multiplicity_by_enumeration(n, t);
        out.emit(&record("multiplicity", json!({ "n": n, "eigenvalue": spec.lambda(t), "t": t, "multiplicity": mu, "enumerated": count })))?;
        if mu != count {
            return Err(Error::Verification(format!("multiplicity mismatch at {t}")));
        }
    }
    let d = match spec.lambda {
        LambdaKind::Power(d) => d,
        _ => n as f64,
    };
    for s in [d, d + 0.5, d + 1.0] {
        let z = zeta_partial(&spec, s, 4000)?;
        out.emit(&record("zeta", serde_json::to_value(&z).expect("plain data")))?;
    }
    let p = p.unwrap_or_else(|| vec![1; n + 1]);
    if p.len() != n + 1 {
        return Err(Error::precondition(format!("--p needs {} entries", n + 1)));
    }
    check_p(&p)?;
    let l: Vec<u64> = crate::weights::lens_weights(&p)?.iter().map(|&x| x as u64).collect();
    let label = FredholmLabel::new(n, vec![0; n], &p)?;
    let cutoffs: Vec<u32> = [8u32, 12, 16].into_iter().filter(|&c| c <= cfg.cutoff.max(8)).collect();
    for i in 0..n {
        for j in i + 1..=n {
            let prof = commutator_profile(&xi(&l, i, j), &spec, &p, &label, cfg.q, &cutoffs)?;
            for pt in &prof.points {
                out.emit(&record(
                    "profile",
                    json!({ "generator": format!("xi_{i}{j}"), "cutoff": pt.cutoff, "norm": pt.norm, "envelope": pt.envelope, "decay_constant": pt.decay_constant }),
                ))?;
            }
        }
    }
    Ok(0)
}

/// Runs one command, writing records to `w`.
pub fn run(cli: Cli, w: &mut dyn Write) -> Result<i32> {
    let cfg = RunConfig {
        q: parse_q(&cli.global.q)?,
        cutoff: cli.global.cutoff,
        max_cutoff: cli.global.max_cutoff,
        output_format: match cli.global.format {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        },
        ..RunConfig::default()
    };
    cfg.validate()?;
    let mut out = Out { w, format: cli.global.format };
    match cli.command {
        Command::Classify { weights } => classify(&weights, &mut out),
        Command::Generators { weights } => generators(&weights, &mut out),
        Command::Relations { p, symbolic, numeric } => relations(&p, symbolic, numeric, &cfg, &mut out),
        Command::Pairing { p, grid } => pairing(&p, grid.as_deref(), &cfg, &mut out),
        Command::Connection { p, k } => connection(&p, k, &cfg, &mut out),
        Command::Spectrum { n, lambda, p } => spectrum(n, &lambda, p, &cfg, &mut out),
    }
}

/// Caps the global rayon pool at `QWPS_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("QWPS_THREADS") {
        let n: usize = v.parse().map_err(|_| Error::Parse(format!("QWPS_THREADS={v:?} is not a number")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
    }
    Ok(())
}

/// Parses, runs and maps errors to exit codes.
pub fn main_with_args<I, T>(args: I, w: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match configure_threads().and_then(|_| run(cli, w)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "schema": SCHEMA, "kind": "error", "message": e.to_string() }));
            e.exit_code()
        }
    }
}
