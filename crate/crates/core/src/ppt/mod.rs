//! Positive-partial-transpose test for GHZ-diagonal states: the 24 linear
//! inequalities, the partial-transpose eigenvalue oracle that backs them,
//! region projections, and the boundary family with `p₁ + p₃ = 1/2`.

pub mod lp;
pub mod region;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix8, DIM};
use crate::pauli_core::{density_from_p, DensityMatrix, ProbVector};

pub use lp::{lp_feasible, AffineConstraint, LinearSystem, Relation};
pub use region::{convex_hull, project_region, Region};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Index quadruples (1-based) of the six inequality groups. Groups `2q` and
/// `2q+1` come from transposing qubit `q+1`.
pub const GROUPS: [[usize; 4]; 6] = [
    [3, 4, 5, 6],
    [1, 2, 7, 8],
    [1, 2, 5, 6],
    [3, 4, 7, 8],
    [1, 2, 3, 4],
    [5, 6, 7, 8],
];

/// Sign patterns applied to `(a, b, c, d)` within each group.
pub const QUAD_SIGNS: [[i8; 4]; 4] = [
    [1, 1, 1, -1],
    [1, 1, -1, 1],
    [1, -1, 1, 1],
    [-1, 1, 1, 1],
];

/// The 24 inequality values, grouped as in [`GROUPS`].
pub type PptValues = [[f64; 4]; 6];

/// The 24 inequalities as integer coefficient rows over `p₁…p₈`, in the
/// same order as [`ppt_inequalities`].
pub fn inequality_rows() -> [[i8; 8]; 24] {
    let mut rows = [[0i8; 8]; 24];
    for (g, group) in GROUPS.iter().enumerate() {
        for (s, signs) in QUAD_SIGNS.iter().enumerate() {
            for (slot, &idx) in group.iter().enumerate() {
                rows[4 * g + s][idx - 1] = signs[slot];
            }
        }
    }
    rows
}

/// Outcome of the PPT test. `quadruples` holds the 24 inequality values;
/// `min_eigs[q]` is the smallest eigenvalue of the partial transpose on
/// qubit `q+1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptReport {
    pub quadruples: PptValues,
    pub min_eigs: [f64; 3],
    pub pass: bool,
}

impl PptReport {
    pub fn min_inequality(&self) -> f64 {
        self.quadruples
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.quadruples.iter().flatten().copied()
    }
}

/// Transposes the indices of `qubit` (1, 2 or 3; qubit 1 is the most
/// significant bit).
pub fn partial_transpose(m: &Matrix8, qubit: usize) -> Result<Matrix8> {
    if !(1..=3).contains(&qubit) {
        return Err(Error::InvalidQubit(qubit));
    }
    let bit = 1usize << (3 - qubit);
    let mut out = Matrix8::zeros();
    for i in 0..DIM {
        for j in 0..DIM {
            let (bi, bj) = (i & bit, j & bit);
            let ti = (i & !bit) | bj;
            let tj = (j & !bit) | bi;
            out.0[ti][tj] = m.0[i][j];
        }
    }
    Ok(out)
}

pub fn partial_transpose_rho(rho: &DensityMatrix, qubit: usize) -> Result<Matrix8> {
    partial_transpose(rho.matrix(), qubit)
}

pub fn min_eigenvalue(h: &Matrix8) -> Result<f64> {
    linalg::min_eigenvalue(h)
}

pub fn ppt_inequalities(p: &ProbVector) -> PptValues {
    let mut out = [[0.0; 4]; 6];
    for (g, group) in GROUPS.iter().enumerate() {
        let v = group.map(|i| p.get(i));
        for (s, signs) in QUAD_SIGNS.iter().enumerate() {
            out[g][s] = (0..4).map(|t| f64::from(signs[t]) * v[t]).sum();
        }
    }
    out
}

/// Smallest eigenvalue of each single-qubit partial transpose.
pub fn partial_transpose_min_eigs(p: &ProbVector) -> Result<[f64; 3]> {
    let rho = density_from_p(p);
    let mut out = [0.0; 3];
    for (q, slot) in out.iter_mut().enumerate() {
        *slot = min_eigenvalue(&partial_transpose(rho.matrix(), q + 1)?)?;
    }
    Ok(out)
}

/// PPT verdict from the inequalities, cross-checked against the eigenvalue
/// oracle. Each partial transpose splits into 2×2 blocks whose eigenvalues
/// are exactly half of the matching inequality values, so the oracle passes
/// at `−tol/2`.
pub fn is_ppt(p: &ProbVector, tol: f64) -> Result<PptReport> {
    let quadruples = ppt_inequalities(p);
    let min_eigs = partial_transpose_min_eigs(p)?;
    let report = PptReport {
        quadruples,
        min_eigs,
        pass: false,
    };
    let min_ineq = report.min_inequality();
    let min_eig = report.min_eigenvalue();
    let pass = min_ineq >= -tol;
    if pass != (min_eig >= -tol / 2.0) {
        return Err(Error::OracleDisagreement {
            min_inequality: min_ineq,
            min_eigenvalue: min_eig,
        });
    }
    Ok(PptReport { pass, ..report })
}

/// Parameters of the boundary family `p₁ + p₃ = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialFamilyParams {
    pub alpha: f64,
    pub p4: f64,
    pub split5: f64,
    pub split7: f64,
}

impl SpecialFamilyParams {
    /// `S = (α − 1)·p₄ + 1/4`, the common value of `p₅+p₆` and `p₇+p₈`.
    pub fn s(&self) -> f64 {
        (self.alpha - 1.0) * self.p4 + 0.25
    }

    pub fn validate(&self) -> Result<()> {
        const SLACK: f64 = 1e-12;
        let bad = |msg: String| Err(Error::InvalidFamilyParams(msg));
        let a = self.alpha;
        if !(a.is_finite() && (-1.0 - SLACK..=0.5 + SLACK).contains(&a)) {
            return bad(format!("alpha = {a} not in [-1, 1/2]"));
        }
        if !(self.p4 >= -SLACK && self.p4 <= 1.0 / (4.0 * (1.0 - a)) + SLACK) {
            return bad(format!("p4 = {} not in [0, 1/(4(1-alpha))]", self.p4));
        }
        let s = self.s();
        for (name, v) in [("split5", self.split5), ("split7", self.split7)] {
            if !(v >= -SLACK && v <= s + SLACK) {
                return bad(format!("{name} = {v} not in [0, {s}]"));
            }
        }
        Ok(())
    }
}

pub fn special_family(params: &SpecialFamilyParams) -> Result<ProbVector> {
    params.validate()?;
    let SpecialFamilyParams {
        alpha,
        p4,
        split5,
        split7,
    } = *params;
    let s = params.s().max(0.0);
    let p = [
        -alpha * p4 + 0.25,
        (1.0 - 2.0 * alpha) * p4,
        alpha * p4 + 0.25,
        p4,
        split5,
        s - split5,
        split7,
        s - split7,
    ]
    .map(|x: f64| x.max(0.0));
    ProbVector::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli_core::ghz_basis;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PROTOTYPE: [f64; 8] = [
        0.043425, 0.15308, 0.016132, 0.19387, 0.059793, 0.24806, 0.18207, 0.10357,
    ];

    fn pv(p: [f64; 8]) -> ProbVector {
        ProbVector::new(p).unwrap()
    }

    #[test]
    fn identity_is_invariant() {
        let id = Matrix8::identity().scale(0.125);
        for q in 1..=3 {
            assert_eq!(partial_transpose(&id, q).unwrap(), id);
        }
        assert_eq!(partial_transpose(&id, 0), Err(Error::InvalidQubit(0)));
        assert_eq!(partial_transpose(&id, 4), Err(Error::InvalidQubit(4)));
    }

    #[test]
    fn ghz_projector_goes_negative() {
        let proj = ghz_basis()[0].projector();
        for q in 1..=3 {
            let lam = min_eigenvalue(&partial_transpose(&proj, q).unwrap()).unwrap();
            assert!((lam + 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn involution_and_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let mut m = Matrix8::zeros();
            for i in 0..DIM {
                for j in 0..DIM {
                    m.0[i][j] = crate::linalg::C64::new(rng.random(), rng.random());
                }
            }
            for q in 1..=3 {
                let t = partial_transpose(&m, q).unwrap();
                assert!((t.trace() - m.trace()).norm() < 1e-14);
                assert!(partial_transpose(&t, q).unwrap().max_abs_diff(&m) < 1e-15);
            }
        }
    }

    #[test]
    fn inequality_examples() {
        let v = ppt_inequalities(&ProbVector::uniform());
        assert!(v.iter().flatten().all(|x| (x - 0.25).abs() < 1e-15));

        let mut e1 = [0.0; 8];
        e1[0] = 1.0;
        let v = ppt_inequalities(&pv(e1));
        // −p₁ + p₂ + p₇ + p₈ is the last entry of the second group
        assert_eq!(v[1][3], -1.0);

        let v = ppt_inequalities(&pv(PROTOTYPE));
        assert!(v.iter().flatten().all(|&x| x >= 0.0));
    }

    #[test]
    fn inequality_rows_match_values() {
        let p = pv(PROTOTYPE);
        let v = ppt_inequalities(&p);
        for (n, row) in inequality_rows().iter().enumerate() {
            let direct: f64 = (0..8).map(|i| f64::from(row[i]) * p.as_array()[i]).sum();
            assert!((direct - v[n / 4][n % 4]).abs() < 1e-15);
        }
    }

    #[test]
    fn is_ppt_examples() {
        assert!(is_ppt(&ProbVector::uniform(), DEFAULT_TOL).unwrap().pass);
        let mut e1 = [0.0; 8];
        e1[0] = 1.0;
        let r = is_ppt(&pv(e1), DEFAULT_TOL).unwrap();
        assert!(!r.pass);
        assert!((r.min_eigenvalue() + 0.5).abs() < 1e-12);
        let r = is_ppt(&pv([0.2, 0.0, 0.2, 0.0, 0.2, 0.1, 0.18, 0.12]), DEFAULT_TOL).unwrap();
        assert!(r.pass);
        let r = is_ppt(&pv(PROTOTYPE), DEFAULT_TOL).unwrap();
        assert!(r.pass);
        assert!(r.min_eigs.iter().all(|&x| x >= -1e-10));
    }

    #[test]
    fn eigenvalues_are_half_the_inequalities_per_qubit() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let p = ProbVector::random(&mut rng);
            let v = ppt_inequalities(&p);
            let eigs = partial_transpose_min_eigs(&p).unwrap();
            for q in 0..3 {
                let m = v[2 * q]
                    .iter()
                    .chain(v[2 * q + 1].iter())
                    .copied()
                    .fold(f64::INFINITY, f64::min);
                assert!((eigs[q] - m / 2.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn special_family_examples() {
        let p = special_family(&SpecialFamilyParams {
            alpha: 0.0,
            p4: 0.0,
            split5: 0.125,
            split7: 0.125,
        })
        .unwrap();
        assert_eq!(p.as_array(), &[0.25, 0.0, 0.25, 0.0, 0.125, 0.125, 0.125, 0.125]);

        let p = special_family(&SpecialFamilyParams {
            alpha: -1.0,
            p4: 0.125,
            split5: 0.0,
            split7: 0.0,
        })
        .unwrap();
        assert_eq!(p.as_array(), &[0.375, 0.375, 0.125, 0.125, 0.0, 0.0, 0.0, 0.0]);

        let bad = SpecialFamilyParams {
            alpha: 0.75,
            p4: 0.0,
            split5: 0.0,
            split7: 0.0,
        };
        assert!(matches!(
            special_family(&bad),
            Err(Error::InvalidFamilyParams(_))
        ));
        let bad = SpecialFamilyParams {
            alpha: 0.0,
            p4: 0.1,
            split5: 0.2,
            split7: 0.0,
        };
        assert!(special_family(&bad).is_err());
    }

    pub(crate) fn family_params() -> impl Strategy<Value = SpecialFamilyParams> {
        (-1.0f64..=0.5, 0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(alpha, u, a, b)| {
            let p4 = u / (4.0 * (1.0 - alpha));
            let s = (alpha - 1.0) * p4 + 0.25;
            SpecialFamilyParams {
                alpha,
                p4,
                split5: a * s,
                split7: b * s,
            }
        })
    }

    proptest! {
        #[test]
        fn special_family_is_ppt_boundary(params in family_params()) {
            let p = special_family(&params).unwrap();
            prop_assert!(is_ppt(&p, DEFAULT_TOL).unwrap().pass);
            prop_assert!((p.get(1) + p.get(3) - 0.5).abs() < 1e-12);
            prop_assert!(((p.get(3) - p.get(4)) - (p.get(1) - p.get(2))).abs() < 1e-12);
            let d = p.get(3) - p.get(4);
            prop_assert!((p.get(5) + p.get(6) - d).abs() < 1e-12);
            prop_assert!((p.get(7) + p.get(8) - d).abs() < 1e-12);
        }

        #[test]
        fn ppt_set_is_convex(seed in any::<u64>(), t in 0.0f64..=1.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = Vec::new();
            while found.len() < 2 {
                let p = ProbVector::random(&mut rng);
                if is_ppt(&p, DEFAULT_TOL).unwrap().pass {
                    found.push(p);
                }
            }
            let mix = found[0].mix(&found[1], t);
            prop_assert!(is_ppt(&mix, DEFAULT_TOL).unwrap().pass);
        }
    }
}
