//! The full invariant suite for one parameter set.

use std::fmt;

use thiserror::Error;

use crate::decomposition::{center_basis, check_direct_sum, decompose, delta_gh_left_annihilator_dim};
use crate::field::{build_field, FieldError};
use crate::group::{validate_params, GroupError};
use crate::group_ring::GroupAlgebra;
use crate::oracle::{all_representations, check_homomorphism, component_field_degree, kernel_is_radical};
use crate::radical::{annihilator_basis, closed_form_basis, triple_products, verify_radical_equality};

pub const NIL_SAMPLES: usize = 20;
pub const HOMOMORPHISM_TRIALS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub m: u64,
    pub t: u64,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify m={} t={} n={}", self.m, self.t, self.n)?;
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        write!(f, "{}", if self.passed() { "all checks passed" } else { "verification failed" })
    }
}

fn check<E: fmt::Display>(name: &'static str, r: Result<String, E>) -> Check {
    match r {
        Ok(detail) => Check { name, passed: true, detail },
        Err(e) => Check { name, passed: false, detail: e.to_string() },
    }
}

fn expect(cond: bool, ok: String, bad: String) -> Result<String, String> {
    if cond { Ok(ok) } else { Err(bad) }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Runs every check; a failing check is recorded, not returned as an error.
pub fn run_suite(m: u64, t: u64, n: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let p = validate_params(m, t)?;
    let field = build_field(n)?;
    let a = GroupAlgebra::new(p, field);
    let mut checks = Vec::new();

    checks.push(check(
        "radical",
        verify_radical_equality(&a, NIL_SAMPLES, seed).map_err(|e| e.to_string()).and_then(|r| {
            expect(
                r.dim == 2,
                format!("dim J = 2, closed form matches, Krn(T) = Anh(s), nilpotency index {}", r.nilpotency_index),
                format!("dim J = {}", r.dim),
            )
        }),
    ));

    let anh = annihilator_basis(&a);
    let zero_triples = triple_products(&anh).iter().filter(|p| p.is_zero()).count();
    let cf_triples = triple_products(&closed_form_basis(&a)).iter().filter(|p| p.is_zero()).count();
    checks.push(check(
        "nilpotency",
        expect(
            zero_triples == 8 && cf_triples == 8,
            "all 8 triple products vanish".into(),
            format!("{} of 8 triple products vanish", zero_triples.min(cf_triples)),
        ),
    ));

    checks.push(check(
        "direct_sum",
        check_direct_sum(&a).map(|d| {
            format!(
                "dim Δ(G,H) = {}, rank J ∪ Δ(G,H) = {}, intersection {}",
                d.dim_delta_gh, d.combined_rank, d.intersection_dim
            )
        }),
    ));

    checks.push(check("center", center_basis(&a).map(|c| format!("{} central class sums in Δ(G,H)", c.len()))));

    checks.push(check(
        "components",
        decompose(&a).map_err(|e| e.to_string()).and_then(|r| {
            let ann = delta_gh_left_annihilator_dim(&a);
            let degrees: Vec<String> = r.components.iter().map(|c| c.field_degree.to_string()).collect();
            expect(
                ann == 0,
                format!("{} components, field degrees [{}]", r.components.len(), degrees.join(", ")),
                format!("Δ(G,H) has a left annihilator of dimension {ann}"),
            )
        }),
    ));

    let reps = all_representations(&p, n);
    checks.push(check(
        "oracle_degrees",
        reps.clone().and_then(|reps| {
            let d = reps.iter().map(component_field_degree).collect::<Result<Vec<_>, _>>()?;
            Ok(format!("{} representations, measured degrees match", d.len()))
        }),
    ));
    checks.push(check(
        "homomorphism",
        reps.and_then(|reps| {
            let mut pairs = 0;
            for (i, rep) in reps.iter().enumerate() {
                pairs += check_homomorphism(rep, HOMOMORPHISM_TRIALS, seed.wrapping_add(i as u64))?;
            }
            Ok(format!("{pairs} pairs checked"))
        }),
    ));

    checks.push(check(
        "kernel",
        kernel_is_radical(&a).map_err(|e| e.to_string()).and_then(|k| {
            expect(
                k.dim == 2 && k.equals_annihilator,
                "joint kernel has dimension 2 and equals J".into(),
                format!("joint kernel dim {}, equals J: {}", k.dim, k.equals_annihilator),
            )
        }),
    ));

    Ok(SuiteReport { m, t, n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_small_groups() {
        for (m, t, n) in [(7, 2, 1), (13, 3, 1)] {
            let r = run_suite(m, t, n, 0).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.checks.len(), 8);
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(run_suite(9, 4, 1, 0), Err(SuiteError::Group(_))));
        assert!(matches!(run_suite(7, 2, 0, 0), Err(SuiteError::Field(_))));
    }
}
