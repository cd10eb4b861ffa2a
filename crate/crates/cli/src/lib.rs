//! Command implementations behind the `t3m-units` binary.
//!
//! `run` never prints; it returns the exit code and both output streams so the
//! commands can be tested without spawning a process.

use serde_json::{json, Value};
use t3m_units::field::build_field;
use t3m_units::group::{validate_params, GroupParams};
use t3m_units::group_ring::GroupAlgebra;
use t3m_units::oracle::{monte_carlo_density, MIN_DENSITY_SAMPLES};
use t3m_units::radical::{annihilator_basis, nilpotency_index};
use t3m_units::units::{structure, MAX_N};
use t3m_units::verify::run_suite;

/// Density runs fail when the z-score exceeds this in absolute value.
pub const Z_THRESHOLD: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Structure,
    Classes,
    Radical,
    Verify,
    Density,
    Table,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub m: u64,
    pub t: u64,
    pub n: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub max_n: usize,
}

impl RunConfig {
    pub fn new(command: Command, m: u64, t: u64, n: Option<usize>) -> RunConfig {
        RunConfig { command, m, t, n, samples: 20000, seed: 0, format: Format::Text, max_n: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn invalid(msg: impl Into<String>) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}", msg.into()) }
    }
}

fn check_n(n: usize) -> Result<usize, Outcome> {
    if (1..=MAX_N).contains(&n) {
        Ok(n)
    } else {
        Err(Outcome::invalid(format!("n must satisfy 1 <= n <= {MAX_N} (got n = {n})")))
    }
}

fn algebra(p: GroupParams, n: usize) -> GroupAlgebra {
    GroupAlgebra::new(p, build_field(n).expect("n is within the field degree cap"))
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => value.to_string(),
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    match dispatch(cfg) {
        Ok(o) | Err(o) => o,
    }
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome, Outcome> {
    let p = validate_params(cfg.m, cfg.t).map_err(|e| Outcome::invalid(e.to_string()))?;
    let need_n = || {
        let n = cfg.n.ok_or_else(|| Outcome::invalid("--n is required for this command"))?;
        check_n(n)
    };
    match cfg.command {
        Command::Structure => {
            let s = structure(cfg.m, cfg.t, need_n()?).map_err(|e| Outcome::invalid(e.to_string()))?;
            Ok(Outcome::ok(match cfg.format {
                Format::Text => s.to_text(),
                Format::Json => s.to_json(),
            }))
        }
        Command::Classes => Ok(Outcome::ok(classes(&p, cfg.format))),
        Command::Radical => Ok(Outcome::ok(radical(&p, need_n()?, cfg.format))),
        Command::Verify => {
            let r = run_suite(cfg.m, cfg.t, need_n()?, cfg.seed).map_err(|e| Outcome::invalid(e.to_string()))?;
            let checks: Vec<Value> =
                r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect();
            let value = json!({"m": r.m, "t": r.t, "n": r.n, "passed": r.passed(), "checks": checks});
            let out = render(cfg.format, r.to_string(), value);
            Ok(Outcome { code: if r.passed() { 0 } else { 1 }, stdout: out, stderr: String::new() })
        }
        Command::Density => {
            let n = need_n()?;
            if cfg.samples < MIN_DENSITY_SAMPLES {
                return Err(Outcome::invalid(format!(
                    "samples must be at least {MIN_DENSITY_SAMPLES} (got {})",
                    cfg.samples
                )));
            }
            let r = monte_carlo_density(&algebra(p, n), cfg.samples, cfg.seed)
                .map_err(|e| Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}") })?;
            let pass = r.z_score.abs() <= Z_THRESHOLD;
            let text = format!(
                "samples: {}\ninvertible: {}\nempirical: {:.6}\npredicted: {:.6} ({})\nz: {:.3}\n{}",
                r.samples,
                r.invertible_count,
                r.empirical_f64(),
                r.predicted_f64(),
                r.predicted,
                r.z_score,
                if pass { "within |z| <= 4" } else { "outside |z| <= 4" }
            );
            let value = json!({
                "m": cfg.m, "t": cfg.t, "n": n, "seed": cfg.seed,
                "samples": r.samples,
                "invertible_count": r.invertible_count,
                "empirical": r.empirical_f64(),
                "predicted": r.predicted_f64(),
                "predicted_exact": r.predicted.to_string(),
                "z_score": r.z_score,
                "passed": pass,
            });
            Ok(Outcome { code: if pass { 0 } else { 1 }, stdout: render(cfg.format, text, value), stderr: String::new() })
        }
        Command::Table => {
            let max_n = check_n(cfg.max_n)?;
            let rows: Vec<_> = (1..=max_n)
                .map(|n| structure(cfg.m, cfg.t, n).expect("parameters validated"))
                .collect();
            let mut text = format!("m={} t={} k={}", p.m(), p.t(), p.k());
            for s in &rows {
                text.push_str(&format!("\nn={}: {}", s.n, s));
            }
            // to_json keeps the schema's key order; a Value would sort the keys
            let json = format!("[{}]", rows.iter().map(|s| s.to_json()).collect::<Vec<_>>().join(","));
            Ok(Outcome::ok(match cfg.format {
                Format::Text => text,
                Format::Json => json,
            }))
        }
    }
}

fn classes(p: &GroupParams, format: Format) -> String {
    let classes = p.conjugacy_classes();
    let mut text = format!("m={} t={} k={} classes={}", p.m(), p.t(), p.k(), classes.len());
    let mut rows = Vec::new();
    for c in &classes {
        let members: Vec<String> = c.members.iter().map(|g| g.to_string()).collect();
        text.push_str(&format!("\n[{}] {{{}}}", c.len(), members.join(", ")));
        rows.push(json!({"representative": c.representative.to_string(), "size": c.len(), "members": members}));
    }
    let value = json!({"m": p.m(), "t": p.t(), "k": p.k(), "classes": rows});
    render(format, text, value)
}

fn radical(p: &GroupParams, n: usize, format: Format) -> String {
    let a = algebra(*p, n);
    let anh = annihilator_basis(&a);
    let index = nilpotency_index(&anh).ok();
    let basis: Vec<String> = anh.basis.iter().map(|v| v.to_string()).collect();
    let index_text = index.map_or("none".to_string(), |e| e.to_string());
    let mut text = format!("dim J = {}\nnilpotency index = {index_text}\nbasis:", anh.dim());
    for b in &basis {
        text.push_str(&format!("\n  {b}"));
    }
    let value = json!({"m": p.m(), "t": p.t(), "n": n, "dim": anh.dim(), "nilpotency_index": index, "basis": basis});
    render(format, text, value)
}
