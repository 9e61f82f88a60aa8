//! Cross-module self-checks run by `mubw verify`.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::all_equalities;
use crate::error::{Error, Result};
use crate::pauli_core::{density_from_p, density_from_r, r_from_p, ProbVector, SIGN_TABLE};
use crate::ppt::{is_ppt, partial_transpose_min_eigs, ppt_inequalities, DEFAULT_TOL};
use crate::witness::{expectation_r, nonlinear_value, validation_table, NonlinearFamilyId, VALIDATION_PSI};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Envelope,
    Identities,
    Witnesses,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Oracle, Suite::Envelope, Suite::Identities, Suite::Witnesses];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Envelope => "envelope",
            Suite::Identities => "identities",
            Suite::Witnesses => "witnesses",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checks: u64,
    pub failures: u64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {}/{} checks passed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite.name(),
            self.checks - self.failures,
            self.checks
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Shifts every inequality value by this amount before comparing with
    /// the eigenvalue oracle; nonzero values must make the oracle suite
    /// fail.
    pub fault: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, fault: 0.0 }
    }
}

/// Offset applied by `--inject-fault`.
pub const INJECTED_FAULT: f64 = 0.05;

const ORACLE_DRAWS: usize = 10_000;
const ENVELOPE_STATES: usize = 100;
const ENVELOPE_ANGLES: usize = 10_000;
const ENVELOPE_TOL: f64 = 1e-6;
const IDENTITY_DRAWS: usize = 10_000;

fn draws(n: usize, seed: u64) -> Vec<ProbVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| ProbVector::random(&mut rng)).collect()
}

fn oracle(opts: &VerifyOptions) -> Result<SuiteResult> {
    let tol = DEFAULT_TOL;
    let failures = draws(ORACLE_DRAWS, opts.seed)
        .par_iter()
        .map(|p| {
            let min_ineq = ppt_inequalities(p)
                .iter()
                .flatten()
                .fold(f64::INFINITY, |a, &b| a.min(b))
                + opts.fault;
            let min_eig = partial_transpose_min_eigs(p)?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            let verdicts_differ = (min_ineq >= -tol) != (min_eig >= -tol / 2.0);
            let r = r_from_p(p);
            let dens = density_from_p(p)
                .matrix()
                .max_abs_diff(density_from_r(&r).matrix());
            Ok(u64::from(verdicts_differ) + u64::from(dens >= 1e-12))
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum();
    Ok(SuiteResult {
        suite: Suite::Oracle,
        checks: 2 * ORACLE_DRAWS as u64,
        failures,
    })
}

fn envelope(opts: &VerifyOptions) -> SuiteResult {
    let ids = NonlinearFamilyId::all();
    let states = draws(ENVELOPE_STATES, opts.seed ^ 0x5eed);
    let failures: u64 = states
        .par_iter()
        .map(|p| {
            let r = r_from_p(p);
            ids.iter()
                .filter(|id| {
                    let scan = (0..ENVELOPE_ANGLES)
                        .map(|k| {
                            let psi = std::f64::consts::TAU * k as f64 / ENVELOPE_ANGLES as f64;
                            expectation_r(&id.with_psi(psi), &r)
                        })
                        .fold(f64::INFINITY, f64::min);
                    (scan - nonlinear_value(id, &r)).abs() > ENVELOPE_TOL
                })
                .count() as u64
        })
        .sum();
    SuiteResult {
        suite: Suite::Envelope,
        checks: (ENVELOPE_STATES * ids.len()) as u64,
        failures,
    }
}

fn identities(opts: &VerifyOptions) -> SuiteResult {
    let mut checks = 0u64;
    let mut failures = 0u64;
    for a in 0..8 {
        for b in 0..8 {
            let dot: i32 = (0..8)
                .map(|k| i32::from(SIGN_TABLE[a][k]) * i32::from(SIGN_TABLE[b][k]))
                .sum();
            checks += 1;
            failures += u64::from(dot != if a == b { 8 } else { 0 });
        }
    }
    let eqs = all_equalities();
    let (c, f) = draws(IDENTITY_DRAWS, opts.seed ^ 0x1d)
        .par_iter()
        .map(|p| {
            let r = r_from_p(p);
            let ppt = is_ppt(p, DEFAULT_TOL).is_ok_and(|rep| rep.pass);
            let mut fails = 0u64;
            let mut n = 0u64;
            for (cat, e) in &eqs {
                let lhs = 1.0 + e.s.value() * r.get(e.i);
                let rhs = r.get(e.j) + e.t.value() * r.get(e.k);
                fails += u64::from((e.lhs(p) - lhs).abs() > 1e-14);
                fails += u64::from((e.rhs(p) - rhs).abs() > 1e-14);
                n += 2;
                // |r_j ± r_k| ≤ 1 ± r_i: everywhere for category 1, on PPT
                // states for categories 2 and 3
                if *cat == 1 || ppt {
                    fails += u64::from(rhs.abs() > lhs + 1e-12);
                    n += 1;
                }
            }
            (n, fails)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    SuiteResult {
        suite: Suite::Identities,
        checks: checks + c,
        failures: failures + f,
    }
}

fn witnesses() -> SuiteResult {
    let table = validation_table(VALIDATION_PSI);
    SuiteResult {
        suite: Suite::Witnesses,
        checks: table.len() as u64,
        failures: table.iter().filter(|c| !c.valid()).count() as u64,
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteResult> {
    match suite {
        Suite::Oracle => oracle(opts),
        Suite::Envelope => Ok(envelope(opts)),
        Suite::Identities => Ok(identities(opts)),
        Suite::Witnesses => Ok(witnesses()),
    }
}

/// Runs `suite`, or all suites when `None`.
pub fn cmd_verify(suite: Option<Suite>, opts: &VerifyOptions) -> Result<Vec<SuiteResult>> {
    match suite {
        Some(s) => Ok(vec![run_suite(s, opts)?]),
        None => Suite::ALL.iter().map(|s| run_suite(*s, opts)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn oracle_suite_catches_injected_fault() {
        let clean = run_suite(Suite::Oracle, &VerifyOptions::default()).unwrap();
        assert!(clean.passed(), "{clean}");
        let faulty = run_suite(
            Suite::Oracle,
            &VerifyOptions {
                fault: INJECTED_FAULT,
                ..VerifyOptions::default()
            },
        )
        .unwrap();
        assert!(!faulty.passed(), "{faulty}");
    }

    #[test]
    fn identity_suite_passes() {
        let r = run_suite(Suite::Identities, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r}");
    }
}
