//! Argument parsing and rendering for the `wmin` command.
//!
//! [`run`] never touches the process: it returns the exit code and both
//! output streams so the binary and the tests share one path.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use wmin_core::catalog::{validate, ValidationReport};
use wmin_core::characters::{character_massive, character_massless, SeriesRecord};
use wmin_core::gram_lab::{
    adjointness_check, exp_factorization_check, g_half_norm, heisenberg_adjointness_check, j_g_ratio,
    virasoro_check,
};
use wmin_core::levels::{central_charge_report, enumerate_unitary_k, k_from_m1, level_data};
use wmin_core::rational::{fmt_q, parse_rational};
use wmin_core::unitarity::{decide, sign2_scan};
use wmin_core::weights::{a_bound, nu_from_half_thetas};
use wmin_core::{lookup, AlgebraId, CatalogEntry, Error, Family, Gq, Weight, Q};

fn rational(s: &str) -> Result<Q, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn family(s: &str) -> Result<Family, String> {
    Family::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("unknown family {s:?}; expected one of {}", names.join(", "))
    })
}

#[derive(Debug, Parser)]
#[command(name = "wmin", version, about = "Unitarity and characters of minimal W-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Family: psl22, sl2m, spo2m, osp4m, D21a, F4, G3.
    #[arg(long = "g", value_parser = family)]
    pub family: Family,
    /// m for sl2m, spo2m and osp4m.
    #[arg(long)]
    pub m: Option<u32>,
    /// a for D21a, as p/q.
    #[arg(long, value_parser = rational)]
    pub a: Option<Q>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    /// Level k as p/q.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, conflicts_with = "m1")]
    pub k: Option<Q>,
    /// Fix k through M_1(k) instead.
    #[arg(long = "M1", value_parser = rational, allow_hyphen_values = true)]
    pub m1: Option<Q>,
}

#[derive(Debug, Args)]
pub struct NuArgs {
    /// ν = Σ r_i θ_i/2, one r per simple component (comma separated).
    #[arg(long = "nu-r", alias = "r", value_parser = rational, value_delimiter = ',',
          allow_hyphen_values = true, conflicts_with = "nu_coords")]
    pub nu_r: Vec<Q>,
    /// ν in the coordinates of the family basis (comma separated).
    #[arg(long = "nu-coords", value_parser = rational, value_delimiter = ',', allow_hyphen_values = true)]
    pub nu_coords: Vec<Q>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the catalog entry and its self-checks.
    Info(AlgebraArgs),
    /// Levels M_i(k), cocycle levels, central charge and collapsing data.
    Levels {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// The first levels of the unitarity range.
    Range {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Decide unitarity of L^W(ν, ℓ_0).
    Check {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        nu: NuArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        l0: Q,
    },
    /// Scan h_even and h_odd against A over an index window.
    #[command(name = "scan-sign2")]
    ScanSign2 {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        nu: NuArgs,
        #[arg(long = "n-max", default_value_t = 8)]
        n_max: u32,
        #[arg(long = "m-max", default_value_t = 8)]
        m_max: u32,
    },
    /// Truncated character of L^W(ν, ℓ_0) as a list of records.
    Char {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[command(flatten)]
        nu: NuArgs,
        /// ℓ_0; defaults to A(k,ν) with --massless.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        l0: Option<Q>,
        /// Require ℓ_0 = A(k,ν).
        #[arg(long)]
        massless: bool,
        #[arg(long = "qmax", value_parser = rational)]
        q_max: Q,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Free-boson and Fairlie operator checks, and Gram norms when an
    /// algebra is given.
    Gram(GramArgs),
}

#[derive(Debug, Args)]
pub struct GramArgs {
    /// s = iσ in the Fairlie field.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
    pub sigma: Q,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
    pub mu: Q,
    /// t = iτ in L(t).
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1")]
    pub tau: Q,
    #[arg(long = "e-max", default_value_t = 8)]
    pub e_max: u32,
    /// Mode indices run over |n|, |m| ≤ n-max.
    #[arg(long = "n-max", default_value_t = 3)]
    pub n_max: i64,
    #[arg(long = "exp-max", default_value_t = 5)]
    pub exp_max: u32,
    #[arg(long = "g", value_parser = family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, value_parser = rational)]
    pub a: Option<Q>,
    #[command(flatten)]
    pub level: LevelArgs,
    #[command(flatten)]
    pub nu: NuArgs,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub l0: Option<Q>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

/// Exit code and captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// One row of `gram` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramCheck {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramReport {
    pub checks: Vec<GramCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub norms: Vec<(String, String)>,
}

#[derive(Debug, Serialize)]
struct InfoJson<'a> {
    entry: &'a CatalogEntry,
    validation: ValidationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeJson {
    pub algebra: String,
    pub k: Vec<String>,
}

/// Parse `argv` (program name first) and execute.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Domain(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn algebra(family: Family, m: Option<u32>, a: Option<Q>) -> Res<AlgebraId> {
    Ok(AlgebraId::from_parts(family, m, a)?)
}

fn level(id: AlgebraId, l: &LevelArgs) -> Res<Q> {
    match (l.k, l.m1) {
        (Some(k), _) => Ok(k),
        (None, Some(m1)) => Ok(k_from_m1(id, m1)?),
        (None, None) => Err(Failure::Usage("one of --k or --M1 is required".into())),
    }
}

fn weight(e: &CatalogEntry, nu: &NuArgs) -> Res<Weight> {
    if !nu.nu_coords.is_empty() {
        if nu.nu_coords.len() != e.dim() {
            return Err(Failure::Domain(Error::InvalidWeight(format!(
                "{} expects {} coordinates, got {}",
                e.id,
                e.dim(),
                nu.nu_coords.len()
            ))));
        }
        return Ok(Weight(nu.nu_coords.clone()));
    }
    if nu.nu_r.is_empty() {
        return Ok(Weight::zero(e.dim()));
    }
    Ok(nu_from_half_thetas(e, &nu.nu_r)?)
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

fn coords(w: &Weight) -> String {
    let v: Vec<String> = w.0.iter().map(fmt_q).collect();
    format!("[{}]", v.join(", "))
}

fn execute(cmd: &Command) -> Res<String> {
    let mut out = String::new();
    match cmd {
        Command::Info(alg) => {
            let id = algebra(alg.family, alg.m, alg.a)?;
            let e = lookup(id)?;
            let report = validate(&e);
            if alg.format == Format::Json {
                return Ok(json(&InfoJson { entry: &e, validation: report }));
            }
            writeln!(out, "algebra: {}", e.id).unwrap();
            writeln!(out, "g_natural: {}", e.natural_name).unwrap();
            writeln!(out, "basis: {}", e.basis.join(", ")).unwrap();
            writeln!(out, "sdim: {}", e.sdim).unwrap();
            writeln!(out, "h_vee: {}", e.h_vee).unwrap();
            writeln!(out, "theta: {}", coords(&e.theta)).unwrap();
            writeln!(out, "xi: {}", coords(&e.xi)).unwrap();
            writeln!(out, "rho_natural: {}", coords(&e.rho_natural)).unwrap();
            for c in &e.components {
                writeln!(out, "component {} ({}): u = {}, hbar_vee = {}, chi = {}", c.index, c.name, c.u, c.hbar_vee, c.chi)
                    .unwrap();
            }
            for c in &report.checks {
                writeln!(out, "check {}: {:?} {}", c.name, c.status, c.detail).unwrap();
            }
        }
        Command::Levels { alg, level: l } => {
            let id = algebra(alg.family, alg.m, alg.a)?;
            let k = level(id, l)?;
            let d = level_data(id, k)?;
            if alg.format == Format::Json {
                return Ok(json(&d));
            }
            let cc = central_charge_report(id, k)?;
            writeln!(out, "algebra: {id}").unwrap();
            writeln!(out, "k: {k}").unwrap();
            for l in &d.levels {
                writeln!(out, "M_{}: {}  chi_{}: {}  cocycle level: {}", l.index, l.m, l.index, l.chi, l.alpha_level)
                    .unwrap();
            }
            writeln!(out, "c: {}", d.c).unwrap();
            writeln!(out, "c via square root: {} (agree: {})", cc.via_square_root, cc.agree).unwrap();
            writeln!(out, "p(k): {}", d.p_k).unwrap();
            match &d.collapse_target {
                Some(t) => writeln!(out, "collapsing: {t}").unwrap(),
                None => writeln!(out, "collapsing: no").unwrap(),
            }
        }
        Command::Range { alg, count } => {
            let id = algebra(alg.family, alg.m, alg.a)?;
            let ks = enumerate_unitary_k(id, *count);
            if alg.format == Format::Json {
                return Ok(json(&RangeJson { algebra: id.to_string(), k: ks.iter().map(fmt_q).collect() }));
            }
            for k in ks {
                writeln!(out, "{k}").unwrap();
            }
        }
        Command::Check { alg, level: l, nu, l0 } => {
            let id = algebra(alg.family, alg.m, alg.a)?;
            let e = lookup(id)?;
            let k = level(id, l)?;
            let nu = weight(&e, nu)?;
            let v = decide(id, k, &nu, *l0)?;
            if alg.format == Format::Json {
                return Ok(json(&v));
            }
            writeln!(out, "algebra: {id}").unwrap();
            writeln!(out, "k: {k}").unwrap();
            writeln!(out, "nu: {}", coords(&nu)).unwrap();
            writeln!(out, "l0: {l0}").unwrap();
            writeln!(out, "outcome: {}", v.outcome.name()).unwrap();
            writeln!(out, "summary: {}", v.summary()).unwrap();
            let q = &v.quantities;
            for (i, m) in &q.m {
                writeln!(out, "M_{i}: {m}").unwrap();
            }
            for (i, c) in &q.chi {
                writeln!(out, "chi_{i}: {c}").unwrap();
            }
            if let Some(a) = q.a {
                writeln!(out, "A: {a}").unwrap();
            }
            if let Some(d) = q.l0_minus_a {
                writeln!(out, "l0 - A: {d}").unwrap();
            }
            if let Some(x) = q.extremal {
                writeln!(out, "extremal: {x}").unwrap();
            }
            if let Some(b) = &q.bound {
                writeln!(out, "bound: {b}").unwrap();
            }
            for r in &v.reasons {
                writeln!(out, "reason: {r}").unwrap();
            }
        }
        Command::ScanSign2 { alg, level: l, nu, n_max, m_max } => {
            let id = algebra(alg.family, alg.m, alg.a)?;
            let e = lookup(id)?;
            let k = level(id, l)?;
            let nu = weight(&e, nu)?;
            let r = sign2_scan(id, k, &nu, *n_max, *m_max)?;
            if alg.format == Format::Json {
                return Ok(json(&r));
            }
            writeln!(out, "A: {}", r.a).unwrap();
            writeln!(out, "label: {}", r.label).unwrap();
            writeln!(out, "checked: {}", r.checked).unwrap();
            writeln!(out, "violations: {}", r.violations.len()).unwrap();
            for v in &r.violations {
                writeln!(out, "violation {}({}) = {}", v.function, v.indices.join(", "), v.value).unwrap();
            }
        }
        Command::Char { alg, level: l, nu, l0, massless, q_max, depth } => {
            let id = algebra(alg.family, alg.m, alg.a)?;
            let e = lookup(id)?;
            let k = level(id, l)?;
            let nu = weight(&e, nu)?;
            let a = a_bound(id, k, &nu)?;
            let l0 = l0.unwrap_or(a);
            if *massless && l0 != a {
                return Err(Failure::Domain(Error::PreconditionViolated(format!(
                    "--massless needs l0 = A = {a}, got {l0}"
                ))));
            }
            let s = if l0 == a {
                character_massless(id, k, &nu, *q_max, *depth)?
            } else if l0 > a {
                character_massive(id, k, &nu, l0, *q_max, *depth)?
            } else {
                return Err(Failure::Domain(Error::PreconditionViolated(format!(
                    "l0 = {l0} is below A = {a}"
                ))));
            };
            let recs = s.records()?;
            if alg.format == Format::Json {
                return Ok(json(&recs));
            }
            for r in &recs {
                let w = Weight(r.weight.clone());
                writeln!(out, "q^{}  e^{}  {}", r.q, coords(&w), r.coeff).unwrap();
            }
        }
        Command::Gram(g) => return gram(g),
    }
    Ok(out)
}

fn gram(g: &GramArgs) -> Res<String> {
    let s = Gq::imag(g.sigma);
    let t = Gq::imag(g.tau);
    let mut checks = Vec::new();
    let n = g.n_max;
    let mut failed = None;
    for a in -n..=n {
        for b in -n..=n {
            if !virasoro_check(s, g.mu, a, b, g.e_max)? && failed.is_none() {
                failed = Some(format!("n = {a}, m = {b}"));
            }
        }
    }
    checks.push(GramCheck { name: "virasoro".into(), pass: failed.is_none(), witness: failed });
    let bad = (-n..=n).find(|&a| !adjointness_check(s, g.mu, a, g.e_max));
    checks.push(GramCheck { name: "adjointness".into(), pass: bad.is_none(), witness: bad.map(|a| format!("n = {a}")) });
    let bad = (-n..=n).find(|&a| !heisenberg_adjointness_check(g.mu, a, g.e_max));
    checks.push(GramCheck {
        name: "heisenberg_adjointness".into(),
        pass: bad.is_none(),
        witness: bad.map(|a| format!("n = {a}")),
    });
    let ok = exp_factorization_check(t, g.exp_max, g.exp_max);
    checks.push(GramCheck {
        name: "exp_factorization".into(),
        pass: ok,
        witness: (!ok).then(|| format!("t = {t}, n, m <= {}", g.exp_max)),
    });
    let mut norms = Vec::new();
    if let Some(f) = g.family {
        let id = algebra(f, g.m, g.a)?;
        let e = lookup(id)?;
        let k = level(id, &g.level)?;
        let nu = weight(&e, &g.nu)?;
        let l0 = match g.l0 {
            Some(x) => x,
            None => a_bound(id, k, &nu)?,
        };
        norms.push(("g_half_norm".to_string(), g_half_norm(id, k, &nu, l0)?.to_string()));
        for c in e.simple_components() {
            norms.push((format!("j_g_ratio_{}", c.index), j_g_ratio(id, k, &nu, c.index)?.to_string()));
        }
    }
    let report = GramReport { checks, norms };
    if g.format == Format::Json {
        return Ok(json(&report));
    }
    let mut out = String::new();
    for c in &report.checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        match &c.witness {
            Some(w) => writeln!(out, "{verdict} {} (witness: {w})", c.name).unwrap(),
            None => writeln!(out, "{verdict} {}", c.name).unwrap(),
        }
    }
    for (k, v) in &report.norms {
        writeln!(out, "{k}: {v}").unwrap();
    }
    Ok(out)
}

/// Parse `char --format json` output back into records.
pub fn parse_series(text: &str) -> serde_json::Result<Vec<SeriesRecord>> {
    serde_json::from_str(text)
}
