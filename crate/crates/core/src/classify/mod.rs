//! End-to-end verdicts for GHZ-diagonal states: PPT test, detection by the
//! nonlinear witness family, explicit separable decompositions and the
//! three categories of saturated equalities.

mod categories;
mod certificate;
pub mod constructors;

use std::fmt;

pub use categories::{all_equalities, category_of, lhs_row, rhs_row, CategoryHit, Equality, CATEGORY_TOL};
pub use certificate::{
    certify_separable, CertificateKind, SeparableCertificate, SeparableTerm, PATTERN_TOL,
    RECONSTRUCTION_TOL,
};

use crate::error::{Error, Result};
use crate::pauli_core::{r_from_p, ProbVector};
use crate::ppt::{is_ppt, PptReport, DEFAULT_TOL};
use crate::witness::{best_nonlinear, validated_ids, NonlinearFamilyId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Npt,
    BoundDetected,
    SeparableCertified,
    PptUndecided,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 4] = [
        VerdictKind::Npt,
        VerdictKind::BoundDetected,
        VerdictKind::SeparableCertified,
        VerdictKind::PptUndecided,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Npt => "NPT",
            VerdictKind::BoundDetected => "BoundDetected",
            VerdictKind::SeparableCertified => "SeparableCertified",
            VerdictKind::PptUndecided => "PptUndecided",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for VerdictKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VerdictKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown verdict {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub ppt: PptReport,
    /// Most negative validated witness, if below `-tol`.
    pub witness: Option<(NonlinearFamilyId, f64)>,
    pub certificate: Option<SeparableCertificate>,
    pub categories: Vec<CategoryHit>,
}

/// Most negative validated nonlinear witness when it is below `-tol`.
pub fn detect_bound_with_tol(p: &ProbVector, tol: f64) -> Result<Option<(NonlinearFamilyId, f64)>> {
    let report = is_ppt(p, tol)?;
    if !report.pass {
        return Err(Error::NotPpt {
            min_inequality: report.min_inequality(),
        });
    }
    Ok(scan(p, tol))
}

pub fn detect_bound(p: &ProbVector) -> Result<Option<(NonlinearFamilyId, f64)>> {
    detect_bound_with_tol(p, DEFAULT_TOL)
}

fn scan(p: &ProbVector, tol: f64) -> Option<(NonlinearFamilyId, f64)> {
    best_nonlinear(validated_ids(), &r_from_p(p)).filter(|(_, v)| *v < -tol)
}

pub fn classify(p: &ProbVector) -> Result<Verdict> {
    classify_with_tol(p, DEFAULT_TOL)
}

pub fn classify_with_tol(p: &ProbVector, tol: f64) -> Result<Verdict> {
    let ppt = is_ppt(p, tol)?;
    let categories = category_of(p, CATEGORY_TOL);
    if !ppt.pass {
        return Ok(Verdict {
            kind: VerdictKind::Npt,
            ppt,
            witness: None,
            certificate: None,
            categories,
        });
    }
    let witness = scan(p, tol);
    let certificate = certify_separable(p)?;
    let kind = match (&witness, &certificate) {
        (Some((id, _)), Some(_)) => {
            return Err(Error::InconsistentVerdict {
                witness: id.to_string(),
            })
        }
        (Some(_), None) => VerdictKind::BoundDetected,
        (None, Some(_)) => VerdictKind::SeparableCertified,
        (None, None) => VerdictKind::PptUndecided,
    };
    Ok(Verdict {
        kind,
        ppt,
        witness,
        certificate,
        categories,
    })
}

/// `(p₁, p₂, q, 0, q, 0, q, 0)` with `q = (1 − p₁ − p₂)/3`.
pub fn cat1_special(p1: f64, p2: f64) -> Result<ProbVector> {
    if !(p1.is_finite() && p2.is_finite() && p1 >= 0.0 && p2 >= 0.0) {
        return Err(Error::InvalidTriangleParams(format!(
            "p1 = {p1}, p2 = {p2} must be nonnegative"
        )));
    }
    let q = (1.0 - p1 - p2) / 3.0;
    if q < -PATTERN_TOL {
        return Err(Error::InvalidTriangleParams(format!(
            "p1 + p2 = {} exceeds 1",
            p1 + p2
        )));
    }
    let q = q.max(0.0);
    ProbVector::new([p1, p2, q, 0.0, q, 0.0, q, 0.0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{nonlinear_value, Partition, Sign};

    fn pv(p: [f64; 8]) -> ProbVector {
        ProbVector::new(p).unwrap()
    }

    const PROTOTYPE: [f64; 8] = [
        0.043425, 0.15308, 0.016132, 0.19387, 0.059793, 0.24806, 0.18207, 0.10357,
    ];

    #[test]
    fn detect_bound_category_one_example() {
        let p = pv([0.2, 0.0, 0.2, 0.0, 0.2, 0.1, 0.18, 0.12]);
        let (id, v) = detect_bound(&p).unwrap().unwrap();
        assert_eq!(id.to_string(), "+1-(47)(56)");
        assert!((v - (0.8 - 0.6464f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn detect_bound_category_two_example() {
        let p = pv([0.1, 0.05, 0.15, 0.0, 0.3, 0.15, 0.2, 0.05]);
        let (_, v) = detect_bound(&p).unwrap().unwrap();
        assert!((v - (0.6 - 0.4f64.sqrt())).abs() < 1e-12);
        // r₅ = r₆ = r₇ here, so all three partitions tie
        let want = NonlinearFamilyId::new(Sign::Plus, 1, Sign::Plus, Partition::P46_57).unwrap();
        assert!((nonlinear_value(&want, &r_from_p(&p)) - v).abs() < 1e-15);
    }

    #[test]
    fn detect_bound_uniform_and_npt() {
        assert_eq!(detect_bound(&ProbVector::uniform()).unwrap(), None);
        let ghz = pv([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(detect_bound(&ghz), Err(Error::NotPpt { .. })));
    }

    #[test]
    fn classify_examples() {
        let ghz = pv([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(classify(&ghz).unwrap().kind, VerdictKind::Npt);
        let proto = ProbVector::new(PROTOTYPE).unwrap();
        assert_eq!(classify(&proto).unwrap().kind, VerdictKind::BoundDetected);
        let v = classify(&ProbVector::uniform()).unwrap();
        assert_eq!(v.kind, VerdictKind::SeparableCertified);
        assert!(v.certificate.unwrap().reconstruction_error < 1e-15);
    }

    #[test]
    fn bound_verdict_cites_negative_witness() {
        let proto = ProbVector::new(PROTOTYPE).unwrap();
        let v = classify(&proto).unwrap();
        let (id, value) = v.witness.unwrap();
        assert!(v.ppt.pass);
        assert!((nonlinear_value(&id, &r_from_p(&proto)) - value).abs() < 1e-15);
        assert!(value < -1e-9);
    }

    #[test]
    fn cat1_special_points() {
        let interior = cat1_special(0.25, 0.125).unwrap();
        assert_eq!(classify(&interior).unwrap().kind, VerdictKind::BoundDetected);
        let vertex = cat1_special(0.5, 0.5).unwrap();
        assert_eq!(classify(&vertex).unwrap().kind, VerdictKind::SeparableCertified);
        let origin = cat1_special(0.0, 0.0).unwrap();
        assert_eq!(classify(&origin).unwrap().kind, VerdictKind::Npt);
        assert!(cat1_special(-0.1, 0.2).is_err());
        assert!(cat1_special(0.7, 0.6).is_err());
    }

    #[test]
    fn verdict_kind_round_trip() {
        for k in VerdictKind::ALL {
            assert_eq!(k.as_str().parse::<VerdictKind>().unwrap(), k);
        }
    }
}
