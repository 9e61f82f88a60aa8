//! Cross-checks against an independent dense eigensolver.

use mubw::linalg::{eigenvalues8, Matrix8};
use mubw::pauli_core::{density_from_p, ProbVector};
use mubw::ppt::{is_ppt, partial_transpose, ppt_inequalities, DEFAULT_TOL};
use mubw::witness::{witness_matrix, NonlinearFamilyId};
use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;

fn reference_eigenvalues(m: &Matrix8) -> Vec<f64> {
    let a = DMatrix::from_fn(8, 8, |i, j| {
        let z = m.0[i][j];
        Complex::new(z.re, z.im)
    });
    let mut v: Vec<f64> = a.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn prob() -> impl Strategy<Value = ProbVector> {
    proptest::array::uniform8(0.0f64..1.0)
        .prop_filter("nonzero", |w| w.iter().sum::<f64>() > 1e-3)
        .prop_map(|w| {
            let s: f64 = w.iter().sum();
            ProbVector::new(w.map(|x| x / s)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn partial_transpose_spectra_agree(p in prob()) {
        let rho = density_from_p(&p);
        for q in 1..=3 {
            let pt = partial_transpose(rho.matrix(), q).unwrap();
            let ours = eigenvalues8(&pt).unwrap();
            let theirs = reference_eigenvalues(&pt);
            for (a, b) in ours.iter().zip(&theirs) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inequality_values_are_twice_the_block_eigenvalues(p in prob()) {
        let rho = density_from_p(&p);
        let ineq = ppt_inequalities(&p);
        for q in 1..=3 {
            let pt = partial_transpose(rho.matrix(), q).unwrap();
            let mut halves: Vec<f64> = ineq[2 * (q - 1)]
                .iter()
                .chain(&ineq[2 * (q - 1) + 1])
                .map(|v| v / 2.0)
                .collect();
            halves.sort_by(f64::total_cmp);
            let spectrum = reference_eigenvalues(&pt);
            for (a, b) in halves.iter().zip(&spectrum) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn verdict_matches_reference_spectrum(p in prob()) {
        let report = is_ppt(&p, DEFAULT_TOL).unwrap();
        let rho = density_from_p(&p);
        let min = (1..=3)
            .map(|q| reference_eigenvalues(&partial_transpose(rho.matrix(), q).unwrap())[0])
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(report.pass, min >= -DEFAULT_TOL / 2.0);
    }
}

#[test]
fn witness_spectra_agree() {
    for id in NonlinearFamilyId::all() {
        for psi in [0.0, 0.4, 1.3, 2.9, 4.4] {
            let w = witness_matrix(&id.with_psi(psi));
            let ours = eigenvalues8(&w).unwrap();
            let theirs = reference_eigenvalues(&w);
            for (a, b) in ours.iter().zip(&theirs) {
                assert!((a - b).abs() < 1e-11, "{id} at {psi}");
            }
        }
    }
}
