//! The nine commuting observable sets of the three-qubit (3,0,6) MUB, their
//! common eigenbases, and local conversions between rows.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, Matrix8, C64, DIM, ONE, ZERO};
use crate::pauli_core::{Pauli, PauliString, StateVector};

/// Overlap tolerance for unbiasedness.
pub const UNBIASED_TOL: f64 = 1e-10;

const TABLE: [(&str, [&str; 7]); 9] = [
    ("(xyz)_pi", ["XII", "IYI", "IIZ", "XYZ", "XYI", "XIZ", "IYZ"]),
    ("(yzx)_pi", ["YII", "IZI", "IIX", "YZX", "YZI", "YIX", "IZX"]),
    ("(zxy)_pi", ["ZII", "IXI", "IIY", "ZXY", "ZXI", "ZIY", "IXY"]),
    ("(xxx)_Gi", ["YZZ", "ZYZ", "ZZY", "YYY", "XXI", "XIX", "IXX"]),
    ("(yyy)_G", ["ZXX", "XZX", "XXZ", "ZZZ", "YYI", "YIY", "IYY"]),
    ("(zzz)_G", ["XYY", "YXY", "YYX", "XXX", "ZZI", "ZIZ", "IZZ"]),
    ("(xzy)_G", ["ZXZ", "YXX", "YYZ", "ZYX", "XZI", "XIY", "IZY"]),
    ("(yxz)_G", ["XYX", "ZYY", "ZZX", "XZY", "YXI", "YIZ", "IXZ"]),
    ("(zyx)_G", ["YZY", "XZZ", "XXY", "YXZ", "ZYI", "ZIX", "IYX"]),
];

/// One row of the table: a maximal commuting set of seven Pauli strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MubRow {
    /// 1-based row number.
    pub index: usize,
    pub label: &'static str,
    pub observables: [PauliString; 7],
}

impl MubRow {
    /// Fails on the first non-commuting pair.
    pub fn check_commuting(&self) -> Result<()> {
        check_commuting(&self.observables)
    }

    fn set(&self) -> BTreeSet<PauliString> {
        self.observables.iter().copied().collect()
    }
}

impl fmt::Display for MubRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let obs: Vec<String> = self.observables.iter().map(|o| o.to_string()).collect();
        write!(f, "{} {}: {}", self.index, self.label, obs.join(" "))
    }
}

fn check_commuting(obs: &[PauliString]) -> Result<()> {
    for (n, a) in obs.iter().enumerate() {
        for b in &obs[n + 1..] {
            if !a.commutes(b) {
                return Err(Error::NonCommuting(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(())
}

pub fn mub_table() -> [MubRow; 9] {
    std::array::from_fn(|n| {
        let (label, obs) = TABLE[n];
        MubRow {
            index: n + 1,
            label,
            observables: obs.map(|s| s.parse().expect("table entries are valid")),
        }
    })
}

/// 1-based lookup.
pub fn mub_row(index: usize) -> MubRow {
    mub_table()[index - 1]
}

/// A simultaneous eigenvector with its ±1 eigenvalues, in row order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommonEigenvector {
    pub state: StateVector,
    pub eigenvalues: [i8; 7],
}

const EIGEN_TOL: f64 = 1e-8;

/// Splits the space into joint eigenspaces one observable at a time; every
/// final subspace must be one-dimensional. Vectors are phase-fixed so the
/// first nonzero amplitude is real positive, and sorted by eigenvalue
/// pattern with `+1` first.
pub fn common_eigenbasis(row: &MubRow) -> Result<Vec<CommonEigenvector>> {
    row.check_commuting()?;
    // Each subspace: orthonormal basis vectors plus eigenvalues so far.
    let identity: Vec<[C64; DIM]> = (0..DIM)
        .map(|n| {
            let mut v = [ZERO; DIM];
            v[n] = ONE;
            v
        })
        .collect();
    let mut spaces: Vec<(Vec<[C64; DIM]>, Vec<i8>)> = vec![(identity, Vec::new())];
    for obs in &row.observables {
        let m = obs.matrix();
        let mut next = Vec::new();
        for (basis, signs) in spaces {
            let k = basis.len();
            let images: Vec<[C64; DIM]> = basis.iter().map(|v| m.apply(v)).collect();
            let restricted: Vec<Vec<C64>> = (0..k)
                .map(|i| (0..k).map(|j| inner(&basis[i], &images[j])).collect())
                .collect();
            let (values, vectors) = hermitian_eigen(&restricted)?;
            for target in [1i8, -1] {
                let sub: Vec<[C64; DIM]> = values
                    .iter()
                    .zip(&vectors)
                    .filter(|(v, _)| (**v - f64::from(target)).abs() < EIGEN_TOL)
                    .map(|(_, coeffs)| combine(&basis, coeffs))
                    .collect();
                if !sub.is_empty() {
                    let mut s = signs.clone();
                    s.push(target);
                    next.push((sub, s));
                }
            }
            let covered = values
                .iter()
                .filter(|v| (v.abs() - 1.0).abs() < EIGEN_TOL)
                .count();
            if covered != k {
                return Err(Error::DegenerateEigenbasis(k));
            }
        }
        spaces = next;
    }
    let mut out = Vec::with_capacity(DIM);
    for (basis, signs) in spaces {
        if basis.len() != 1 {
            return Err(Error::DegenerateEigenbasis(basis.len()));
        }
        out.push(CommonEigenvector {
            state: StateVector::normalized(fix_phase(basis[0])),
            eigenvalues: signs.try_into().expect("seven observables"),
        });
    }
    out.sort_by_key(|e| std::cmp::Reverse(e.eigenvalues));
    Ok(out)
}

fn inner(a: &[C64; DIM], b: &[C64; DIM]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn combine(basis: &[[C64; DIM]], coeffs: &[C64]) -> [C64; DIM] {
    let mut v = [ZERO; DIM];
    for (b, c) in basis.iter().zip(coeffs) {
        for n in 0..DIM {
            v[n] += b[n] * c;
        }
    }
    v
}

fn fix_phase(mut v: [C64; DIM]) -> [C64; DIM] {
    const NONZERO: f64 = 1e-9;
    if let Some(first) = v.iter().find(|x| x.norm() > NONZERO).copied() {
        let phase = first.conj() / first.norm();
        for x in &mut v {
            *x *= phase;
            if x.re.abs() < 1e-15 {
                x.re = 0.0;
            }
            if x.im.abs() < 1e-15 {
                x.im = 0.0;
            }
        }
    }
    v
}

/// Moduli of all cross overlaps `|⟨a_i|b_j⟩|`.
pub fn overlap_moduli(a: &[StateVector], b: &[StateVector]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|x| b.iter().map(|y| x.inner(y).norm()).collect())
        .collect()
}

/// Every overlap has modulus `1/√8` within [`UNBIASED_TOL`].
pub fn unbiasedness(a: &[StateVector], b: &[StateVector]) -> bool {
    let target = 1.0 / (DIM as f64).sqrt();
    overlap_moduli(a, b)
        .iter()
        .flatten()
        .all(|m| (m - target).abs() <= UNBIASED_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalKind {
    Identity,
    /// Hadamard.
    XZ,
    /// `diag(e^{iπ/4}, e^{−iπ/4})`
    YX,
    /// `(1/√2)[[1, i], [i, 1]]`
    YZ,
}

/// Single-qubit unitary used to convert between rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitary {
    pub kind: LocalKind,
    pub u: [[C64; 2]; 2],
}

impl LocalUnitary {
    pub fn new(kind: LocalKind) -> Self {
        let h = FRAC_1_SQRT_2;
        let u = match kind {
            LocalKind::Identity => [[ONE, ZERO], [ZERO, ONE]],
            LocalKind::XZ => [
                [C64::new(h, 0.0), C64::new(h, 0.0)],
                [C64::new(h, 0.0), C64::new(-h, 0.0)],
            ],
            LocalKind::YX => [
                [C64::from_polar(1.0, FRAC_PI_4), ZERO],
                [ZERO, C64::from_polar(1.0, -FRAC_PI_4)],
            ],
            LocalKind::YZ => [
                [C64::new(h, 0.0), C64::new(0.0, h)],
                [C64::new(0.0, h), C64::new(h, 0.0)],
            ],
        };
        LocalUnitary { kind, u }
    }

    pub fn identity() -> Self {
        LocalUnitary::new(LocalKind::Identity)
    }

    /// `max |(u u†)_{ij} − δ_ij|`
    pub fn unitarity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let s: C64 = (0..2).map(|k| self.u[i][k] * self.u[j][k].conj()).sum();
                let want = if i == j { ONE } else { ZERO };
                worst = worst.max((s - want).norm());
            }
        }
        worst
    }

    /// `u σ u†` as `sign · σ'`.
    pub fn conjugate(&self, p: Pauli) -> Result<(f64, Pauli)> {
        let m = p.matrix();
        let mut out = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[i][j] += self.u[i][k] * m[k][l] * self.u[j][l].conj();
                    }
                }
            }
        }
        for q in Pauli::ALL {
            let t = q.matrix();
            let c: C64 = (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| t[j][i] * out[i][j])
                .sum::<C64>()
                / 2.0;
            if (c.norm() - 1.0).abs() < 1e-12 && c.im.abs() < 1e-12 {
                return Ok((c.re.signum(), q));
            }
        }
        Err(Error::NotPauli(format!("{out:?}")))
    }
}

/// A relabeling of `{X, Y, Z}` applied to one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelPermutation {
    /// Images of X, Y, Z.
    pub images: [Pauli; 3],
}

impl LabelPermutation {
    pub const IDENTITY: LabelPermutation = LabelPermutation {
        images: [Pauli::X, Pauli::Y, Pauli::Z],
    };
    /// `σ_y → σ_z → σ_x → σ_y`
    pub const CYCLE_YZX: LabelPermutation = LabelPermutation {
        images: [Pauli::Y, Pauli::Z, Pauli::X],
    };

    pub fn apply(&self, p: Pauli) -> Pauli {
        match p {
            Pauli::I => Pauli::I,
            Pauli::X => self.images[0],
            Pauli::Y => self.images[1],
            Pauli::Z => self.images[2],
        }
    }
}

/// Transformed observables with the signs picked up under conjugation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedRow {
    pub observables: [(f64, PauliString); 7],
}

impl SignedRow {
    pub fn unsigned(&self) -> [PauliString; 7] {
        self.observables.map(|(_, s)| s)
    }

    /// Row of the table with the same observables modulo signs.
    pub fn matching_row(&self) -> Result<MubRow> {
        let set: BTreeSet<PauliString> = self.unsigned().into_iter().collect();
        mub_table()
            .into_iter()
            .find(|row| row.set() == set)
            .ok_or(Error::RowMismatch)
    }
}

/// Conjugates each observable by `locals` qubit-wise, then relabels with
/// `perm` when given.
pub fn transform_row(
    row: &MubRow,
    locals: &[LocalUnitary; 3],
    perm: Option<&[LabelPermutation; 3]>,
) -> Result<SignedRow> {
    let mut out = [(1.0, PauliString::IDENTITY); 7];
    for (slot, obs) in out.iter_mut().zip(&row.observables) {
        let mut sign = 1.0;
        let mut labels = obs.labels;
        for q in 0..3 {
            let (s, p) = locals[q].conjugate(labels[q])?;
            sign *= s;
            labels[q] = perm.map_or(p, |perm| perm[q].apply(p));
        }
        *slot = (sign, PauliString { labels });
    }
    check_commuting(&out.map(|(_, s)| s))?;
    Ok(SignedRow { observables: out })
}

/// `U₁ ⊗ U₂ ⊗ U₃`
pub fn local_matrix(locals: &[LocalUnitary; 3]) -> Matrix8 {
    let mut m = Matrix8::zeros();
    for i in 0..DIM {
        for j in 0..DIM {
            m.0[i][j] = (0..3)
                .map(|q| locals[q].u[(i >> (2 - q)) & 1][(j >> (2 - q)) & 1])
                .product();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli_core::{ghz_basis, observables, ps, SIGN_TABLE};

    #[test]
    fn table_entries() {
        let t = mub_table();
        assert_eq!(t[0].observables[0], ps("XII"));
        assert_eq!(
            t[5].observables,
            ["XYY", "YXY", "YYX", "XXX", "ZZI", "ZIZ", "IZZ"].map(ps)
        );
        for row in &t {
            row.check_commuting().unwrap();
        }
    }

    #[test]
    fn rows_close_under_multiplication() {
        for row in mub_table() {
            let mut set = row.set();
            set.insert(PauliString::IDENTITY);
            for a in &set {
                for b in &set {
                    let (phase, c) = a.product(b);
                    assert!(set.contains(&c), "{row}");
                    assert!(phase.im.abs() < 1e-15, "commuting products are real");
                }
            }
        }
    }

    #[test]
    fn eigenbases_are_orthonormal() {
        for row in mub_table() {
            let basis: Vec<StateVector> = common_eigenbasis(&row)
                .unwrap()
                .into_iter()
                .map(|e| e.state)
                .collect();
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((a.inner(b) - C64::new(want, 0.0)).norm() < 1e-12);
                }
            }
            for e in common_eigenbasis(&row).unwrap() {
                let v = e.state.amplitudes();
                let first = v.iter().find(|x| x.norm() > 1e-9).unwrap();
                assert!(first.im == 0.0 && first.re > 0.0);
                for (o, s) in row.observables.iter().zip(e.eigenvalues) {
                    let w = o.matrix().apply(v);
                    for n in 0..DIM {
                        assert!((w[n] - v[n] * f64::from(s)).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn row_six_is_the_ghz_basis() {
        let ghz = ghz_basis();
        let obs = observables();
        for e in common_eigenbasis(&mub_row(6)).unwrap() {
            let hits: Vec<usize> = (0..8)
                .filter(|&i| (ghz[i].inner(&e.state).norm() - 1.0).abs() < 1e-12)
                .collect();
            assert_eq!(hits.len(), 1);
            let i = hits[0];
            // eigenvalue pattern equals column i of the sign table
            for (o, s) in mub_row(6).observables.iter().zip(e.eigenvalues) {
                let k = obs.iter().position(|x| x == o).unwrap();
                assert_eq!(SIGN_TABLE[k + 1][i], s);
            }
        }
    }

    #[test]
    fn row_one_is_a_product_basis() {
        for e in common_eigenbasis(&mub_row(1)).unwrap() {
            let v = e.state.amplitudes();
            // rank-1 as a 2×4 reshaping across the first cut, and likewise
            // for the other cuts
            for q in 0..3 {
                let idx = |b: usize, rest: usize| {
                    let lo = rest & ((1 << (2 - q)) - 1);
                    let hi = rest >> (2 - q);
                    (hi << (3 - q)) | (b << (2 - q)) | lo
                };
                for r1 in 0..4 {
                    for r2 in 0..4 {
                        let det = v[idx(0, r1)] * v[idx(1, r2)] - v[idx(1, r1)] * v[idx(0, r2)];
                        assert!(det.norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn all_pairs_unbiased() {
        let bases: Vec<Vec<StateVector>> = mub_table()
            .iter()
            .map(|r| common_eigenbasis(r).unwrap().into_iter().map(|e| e.state).collect())
            .collect();
        let mut pairs = 0;
        for i in 0..9 {
            for j in i + 1..9 {
                assert!(unbiasedness(&bases[i], &bases[j]), "{} {}", i + 1, j + 1);
                pairs += 1;
            }
            assert!(!unbiasedness(&bases[i], &bases[i]));
        }
        assert_eq!(pairs, 36);
    }

    #[test]
    fn single_qubit_bases_unbiased() {
        let h = FRAC_1_SQRT_2;
        let z = [[1.0, 0.0], [0.0, 1.0]];
        let x = [[h, h], [h, -h]];
        for a in z {
            for b in x {
                let o: f64 = a[0] * b[0] + a[1] * b[1];
                assert!((o.abs() - h).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn local_unitaries_swap_their_pairs() {
        let cases = [
            (LocalKind::XZ, Pauli::X, Pauli::Z),
            (LocalKind::YX, Pauli::Y, Pauli::X),
            (LocalKind::YZ, Pauli::Y, Pauli::Z),
        ];
        for (kind, a, b) in cases {
            let u = LocalUnitary::new(kind);
            assert!(u.unitarity_error() < 1e-12);
            assert_eq!(u.conjugate(a).unwrap().1, b);
            assert_eq!(u.conjugate(b).unwrap().1, a);
        }
    }

    #[test]
    fn cyclic_relabeling_maps_row_six_to_row_four() {
        let id = LocalUnitary::identity();
        let perm = [LabelPermutation::CYCLE_YZX; 3];
        let out = transform_row(&mub_row(6), &[id; 3], Some(&perm)).unwrap();
        assert_eq!(out.matching_row().unwrap().index, 4);
        assert_eq!(out.unsigned(), mub_row(4).observables);
    }

    #[test]
    fn row_seven_converts_to_row_six() {
        let locals = [
            LocalUnitary::new(LocalKind::XZ),
            LocalUnitary::new(LocalKind::YX),
            LocalUnitary::new(LocalKind::YZ),
        ];
        let out = transform_row(&mub_row(7), &locals, None).unwrap();
        assert_eq!(out.matching_row().unwrap().index, 6);
        // cross-check against full 8×8 conjugation
        let u = local_matrix(&locals);
        for ((sign, s), o) in out.observables.iter().zip(mub_row(7).observables) {
            let conj = u * o.matrix() * u.adjoint();
            assert!(conj.max_abs_diff(&s.matrix().scale(*sign)) < 1e-12);
        }
    }

    #[test]
    fn identity_transform_is_trivial() {
        for row in mub_table() {
            let out = transform_row(&row, &[LocalUnitary::identity(); 3], None).unwrap();
            assert_eq!(out.unsigned(), row.observables);
            assert!(out.observables.iter().all(|(s, _)| *s == 1.0));
        }
    }

    #[test]
    fn conversions_preserve_unbiasedness() {
        let locals = [
            LocalUnitary::new(LocalKind::XZ),
            LocalUnitary::new(LocalKind::YX),
            LocalUnitary::new(LocalKind::YZ),
        ];
        let u = local_matrix(&locals);
        let rotate = |row: usize| -> Vec<StateVector> {
            common_eigenbasis(&mub_row(row))
                .unwrap()
                .into_iter()
                .map(|e| StateVector::normalized(u.apply(e.state.amplitudes())))
                .collect()
        };
        assert!(unbiasedness(&rotate(7), &rotate(8)));
        assert!(unbiasedness(&rotate(1), &rotate(6)));
    }

    #[test]
    fn rejects_non_commuting_rows() {
        let bad = MubRow {
            index: 0,
            label: "bad",
            observables: ["XII", "ZII", "IIZ", "XYZ", "XYI", "XIZ", "IYZ"].map(ps),
        };
        assert!(matches!(common_eigenbasis(&bad), Err(Error::NonCommuting(..))));
    }
}
