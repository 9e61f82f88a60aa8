use std::fmt::Write as _;

use crate::classify::{classify_with_tol, Verdict};
use crate::error::Result;
use crate::pauli_core::{r_from_p, ProbVector};
use crate::ppt::GROUPS;

use super::input::StateInput;

/// Classification of one input state.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOutcome {
    pub p: ProbVector,
    pub verdict: Verdict,
}

pub fn cmd_classify(input: &StateInput, tol: f64) -> Result<ClassifyOutcome> {
    let p = input.to_prob()?;
    let verdict = classify_with_tol(&p, tol)?;
    Ok(ClassifyOutcome { p, verdict })
}

impl ClassifyOutcome {
    pub fn text(&self) -> String {
        let v = &self.verdict;
        let mut s = String::new();
        let _ = writeln!(s, "verdict: {}", v.kind);
        let _ = writeln!(s, "p: {}", fmt_list(self.p.as_array()));
        let _ = writeln!(s, "r: {}", fmt_list(r_from_p(&self.p).as_array()));
        let _ = writeln!(s, "ppt inequalities:");
        for (g, quad) in GROUPS.iter().zip(&v.ppt.quadruples) {
            let _ = writeln!(s, "  p{:?}: {}", g, fmt_list(quad));
        }
        let _ = writeln!(
            s,
            "partial-transpose min eigenvalues: {}",
            fmt_list(&v.ppt.min_eigs)
        );
        match v.witness {
            Some((id, value)) => {
                let _ = writeln!(s, "witness: {id} value {value:.12}");
            }
            None => {
                let _ = writeln!(s, "witness: none");
            }
        }
        match &v.certificate {
            Some(c) => {
                let _ = writeln!(s, "certificate: {c}");
                let _ = writeln!(s, "reconstruction error: {:e}", c.reconstruction_error);
            }
            None => {
                let _ = writeln!(s, "certificate: none");
            }
        }
        for hit in &v.categories {
            let _ = writeln!(
                s,
                "category {}: {} (residual {:e})",
                hit.category, hit.equality, hit.residual
            );
        }
        s
    }

    pub const RECORD_HEADER: [&'static str; 14] = [
        "p1",
        "p2",
        "p3",
        "p4",
        "p5",
        "p6",
        "p7",
        "p8",
        "verdict",
        "min_inequality",
        "min_eigenvalue",
        "witness",
        "value",
        "certificate",
    ];

    /// One CSV row matching [`ClassifyOutcome::RECORD_HEADER`].
    pub fn record(&self) -> Vec<String> {
        let v = &self.verdict;
        let mut row: Vec<String> = self.p.as_array().iter().map(|x| sci(*x)).collect();
        row.push(v.kind.to_string());
        row.push(sci(v.ppt.min_inequality()));
        row.push(sci(v.ppt.min_eigenvalue()));
        match v.witness {
            Some((id, value)) => {
                row.push(id.to_string());
                row.push(sci(value));
            }
            None => {
                row.push(String::new());
                row.push(String::new());
            }
        }
        row.push(
            v.certificate
                .as_ref()
                .map(|c| c.kind.to_string())
                .unwrap_or_default(),
        );
        row
    }

    pub fn csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(Self::RECORD_HEADER).map_err(csv_err)?;
        w.write_record(self.record()).map_err(csv_err)?;
        let bytes = w.into_inner().map_err(|e| crate::Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("ascii output"))
    }
}

pub(crate) fn csv_err(e: csv::Error) -> crate::Error {
    crate::Error::Parse(e.to_string())
}

/// Lossless decimal form (17 significant digits).
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| format!("{x:.6}"))
        .collect::<Vec<_>>()
        .join(", ")
}
