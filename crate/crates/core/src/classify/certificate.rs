//! Explicit separable decompositions. Every term is a manifestly separable
//! operator: each comes with a finite ensemble of product states that
//! reproduces it, which the tests check.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix8, C64, DIM, ONE, ZERO};
use crate::pauli_core::{density_from_p, observables, r_from_p, Pauli, PauliString, ProbVector, PAIR_PATTERNS};

use super::categories::{category_of, CategoryHit, CATEGORY_TOL};

/// Tolerance for the equal-pair and zero-pair patterns.
pub const PATTERN_TOL: f64 = 1e-12;
/// Certificates must reproduce ρ to this accuracy.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeparableTerm {
    /// `III/8`
    MaximallyMixed,
    /// `(|a_k⟩⟨a_k| + |ā_k⟩⟨ā_k|)/2` for GHZ pair `k ∈ 1..=4`.
    PairedProjector(usize),
    /// `(III + s(|a_k⟩⟨ā_k| + |ā_k⟩⟨a_k|))/8`
    GhzCoherence { pair: usize, sign: f64 },
    /// `(III + s·P)/8` for a Pauli string with no identity factor.
    PauliMixture { observable: PauliString, sign: f64 },
}

impl SeparableTerm {
    pub fn matrix(&self) -> Matrix8 {
        match *self {
            SeparableTerm::MaximallyMixed => Matrix8::identity().scale(0.125),
            SeparableTerm::PairedProjector(k) => {
                let a = PAIR_PATTERNS[k - 1];
                let mut m = Matrix8::zeros();
                m.0[a][a] = C64::new(0.5, 0.0);
                m.0[7 - a][7 - a] = C64::new(0.5, 0.0);
                m
            }
            SeparableTerm::GhzCoherence { pair, sign } => {
                let a = PAIR_PATTERNS[pair - 1];
                let mut m = Matrix8::identity();
                m.0[a][7 - a] = C64::new(sign, 0.0);
                m.0[7 - a][a] = C64::new(sign, 0.0);
                m.scale(0.125)
            }
            SeparableTerm::PauliMixture { observable, sign } => {
                (Matrix8::identity() + observable.matrix().scale(sign)).scale(0.125)
            }
        }
    }

    /// Weighted product states whose mixture equals
    /// [`SeparableTerm::matrix`].
    pub fn product_ensemble(&self) -> Vec<(f64, [C64; DIM])> {
        match *self {
            SeparableTerm::MaximallyMixed => (0..DIM).map(|n| (0.125, basis(n))).collect(),
            SeparableTerm::PairedProjector(k) => {
                let a = PAIR_PATTERNS[k - 1];
                vec![(0.5, basis(a)), (0.5, basis(7 - a))]
            }
            SeparableTerm::GhzCoherence { pair, sign } => {
                // ⊗_q (|a_q⟩ + e^{iφ_q}|ā_q⟩)/√2 with φ₁, φ₂ on a 4-point
                // grid and φ₃ fixing the total phase; every partial coherence
                // averages out.
                let a = PAIR_PATTERNS[pair - 1];
                let theta = if sign >= 0.0 { 0.0 } else { PI };
                let mut out = Vec::with_capacity(16);
                for i1 in 0..4 {
                    for i2 in 0..4 {
                        let f1 = FRAC_PI_2 * i1 as f64;
                        let f2 = FRAC_PI_2 * i2 as f64;
                        let phases = [f1, f2, theta - f1 - f2];
                        let qubits: [[C64; 2]; 3] = std::array::from_fn(|q| {
                            let bit = (a >> (2 - q)) & 1;
                            let mut v = [ZERO; 2];
                            v[bit] = C64::new(FRAC_1_SQRT_2, 0.0);
                            v[1 - bit] = C64::from_polar(FRAC_1_SQRT_2, phases[q]);
                            v
                        });
                        out.push((1.0 / 16.0, kron3(&qubits)));
                    }
                }
                out
            }
            SeparableTerm::PauliMixture { observable, sign } => {
                // Product eigenstates whose eigenvalues multiply to `sign`.
                let mut out = Vec::with_capacity(4);
                for e1 in [1.0, -1.0] {
                    for e2 in [1.0, -1.0] {
                        let e3 = sign * e1 * e2;
                        let es = [e1, e2, e3];
                        let qubits: [[C64; 2]; 3] =
                            std::array::from_fn(|q| eigenvector(observable.labels[q], es[q]));
                        out.push((0.25, kron3(&qubits)));
                    }
                }
                out
            }
        }
    }
}

fn basis(n: usize) -> [C64; DIM] {
    let mut v = [ZERO; DIM];
    v[n] = ONE;
    v
}

fn kron3(q: &[[C64; 2]; 3]) -> [C64; DIM] {
    std::array::from_fn(|k| q[0][k >> 2] * q[1][(k >> 1) & 1] * q[2][k & 1])
}

fn eigenvector(p: Pauli, e: f64) -> [C64; 2] {
    let h = FRAC_1_SQRT_2;
    match p {
        Pauli::X => [C64::new(h, 0.0), C64::new(e * h, 0.0)],
        Pauli::Y => [C64::new(h, 0.0), C64::new(0.0, e * h)],
        Pauli::Z if e > 0.0 => [ONE, ZERO],
        Pauli::Z => [ZERO, ONE],
        Pauli::I => panic!("Pauli mixtures need a non-identity label on every qubit"),
    }
}

impl fmt::Display for SeparableTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = |s: f64| if s >= 0.0 { '+' } else { '-' };
        match *self {
            SeparableTerm::MaximallyMixed => write!(f, "III/8"),
            SeparableTerm::PairedProjector(k) => write!(f, "pair{k}"),
            SeparableTerm::GhzCoherence { pair, sign } => write!(f, "coh{}{pair}", sym(sign)),
            SeparableTerm::PauliMixture { observable, sign } => {
                write!(f, "(III{}{observable})/8", sym(sign))
            }
        }
    }
}

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CertificateKind {
    /// A GHZ pair is empty, forcing every coherence to vanish.
    ZeroPair { pair: usize },
    /// Three pairs without coherence; `trim ≤ lo` selects the first
    /// bookkeeping branch.
    EqualPairs { pair: usize, trim_below_low: bool },
    /// Separable branch of a category equality.
    CategoryBranch(CategoryHit),
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateKind::ZeroPair { pair } => write!(f, "zero-pair({pair})"),
            CertificateKind::EqualPairs {
                pair,
                trim_below_low,
            } => write!(
                f,
                "equal-pairs({pair},{})",
                if *trim_below_low { "low" } else { "high" }
            ),
            CertificateKind::CategoryBranch(hit) => {
                write!(f, "category{}[{}]", hit.category, hit.equality)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparableCertificate {
    pub kind: CertificateKind,
    pub terms: Vec<(f64, SeparableTerm)>,
    pub reconstruction_error: f64,
}

impl SeparableCertificate {
    pub fn matrix(&self) -> Matrix8 {
        self.terms
            .iter()
            .fold(Matrix8::zeros(), |acc, (w, t)| acc + t.matrix().scale(*w))
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|(w, _)| w).sum()
    }
}

impl fmt::Display for SeparableCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, t)| format!("{w:.6}*{t}"))
            .collect();
        write!(f, "{}: {}", self.kind, parts.join(" + "))
    }
}

/// Pair diagonals `d_k = (p_{2k−1} + p_{2k})/2` and coherences
/// `c_k = (p_{2k−1} − p_{2k})/2`.
fn pair_stats(p: &ProbVector) -> ([f64; 4], [f64; 4]) {
    let a = p.as_array();
    let d = std::array::from_fn(|k| (a[2 * k] + a[2 * k + 1]) / 2.0);
    let c = std::array::from_fn(|k| (a[2 * k] - a[2 * k + 1]) / 2.0);
    (d, c)
}

/// Drops zero weights, rejects clearly negative ones and clamps round-off.
fn clean(terms: Vec<(f64, SeparableTerm)>) -> Option<Vec<(f64, SeparableTerm)>> {
    let mut out = Vec::with_capacity(terms.len());
    for (w, t) in terms {
        if w < -PATTERN_TOL {
            return None;
        }
        if w > 0.0 {
            out.push((w, t));
        }
    }
    Some(out)
}

fn finish(
    p: &ProbVector,
    kind: CertificateKind,
    terms: Vec<(f64, SeparableTerm)>,
) -> Result<SeparableCertificate> {
    let mut cert = SeparableCertificate {
        kind,
        terms,
        reconstruction_error: 0.0,
    };
    let err = cert.matrix().max_abs_diff(density_from_p(p).matrix());
    cert.reconstruction_error = err;
    if err > RECONSTRUCTION_TOL || (cert.weight_sum() - 1.0).abs() > RECONSTRUCTION_TOL {
        return Err(Error::CertificateMismatch { error: err });
    }
    Ok(cert)
}

/// Empty pair: every coherence vanishes and ρ is a mixture of paired
/// projectors.
fn zero_pair(p: &ProbVector) -> Option<(CertificateKind, Vec<(f64, SeparableTerm)>)> {
    let (d, c) = pair_stats(p);
    let empty = (0..4).find(|&k| d[k] <= PATTERN_TOL)?;
    if c.iter().any(|x| x.abs() > PATTERN_TOL) {
        return None;
    }
    let terms = (0..4)
        .map(|k| (2.0 * d[k], SeparableTerm::PairedProjector(k + 1)))
        .collect();
    Some((CertificateKind::ZeroPair { pair: empty + 1 }, clean(terms)?))
}

/// Three coherence-free pairs plus one pair `k*` with `p = (hi, lo)`:
/// with `c` the smallest of the other pair entries and
/// `ε = (lo + 2c − hi)/2`, μ = min(ε, lo),
/// ρ = 8μ·III/8 + 2(lo − μ)·pair(k*) + 8(c − ε)·coh(k*)
///     + Σ_j 2(ε − μ + v_j − c)·pair(j).
fn equal_pairs(p: &ProbVector) -> Option<(CertificateKind, Vec<(f64, SeparableTerm)>)> {
    let (d, c) = pair_stats(p);
    let unequal: Vec<usize> = (0..4).filter(|&k| c[k].abs() > PATTERN_TOL).collect();
    let star = match unequal.as_slice() {
        [] => (0..4).max_by(|&a, &b| c[a].abs().total_cmp(&c[b].abs()))?,
        [k] => *k,
        _ => return None,
    };
    let a = p.as_array();
    let (first, second) = (a[2 * star], a[2 * star + 1]);
    let (hi, lo) = (first.max(second), first.min(second));
    let sign = if first >= second { 1.0 } else { -1.0 };
    let others: Vec<usize> = (0..4).filter(|&k| k != star).collect();
    let cmin = others.iter().map(|&k| d[k]).fold(f64::INFINITY, f64::min);
    let eps = (lo + 2.0 * cmin - hi) / 2.0;
    let mu = eps.min(lo);
    let mut terms = vec![
        (8.0 * mu, SeparableTerm::MaximallyMixed),
        (2.0 * (lo - mu), SeparableTerm::PairedProjector(star + 1)),
        (
            8.0 * (cmin - eps),
            SeparableTerm::GhzCoherence {
                pair: star + 1,
                sign,
            },
        ),
    ];
    for &k in &others {
        terms.push((
            2.0 * (eps - mu + d[k] - cmin),
            SeparableTerm::PairedProjector(k + 1),
        ));
    }
    Some((
        CertificateKind::EqualPairs {
            pair: star + 1,
            trim_below_low: eps <= lo,
        },
        clean(terms)?,
    ))
}

/// Separable branch of a category equality: the hit has `r_l ± r_m = 0`.
/// ρ splits as Σ_j |r_j|·(III ± O_j)/8 over the four X/Y observables plus a
/// diagonal remainder Σ_k 2(d_k − Σ|r_j|/8)·pair(k), which is separable
/// whenever every pair diagonal covers the X/Y weight.
fn category_branch(p: &ProbVector) -> Option<(CertificateKind, Vec<(f64, SeparableTerm)>)> {
    let r = r_from_p(p);
    let hit = category_of(p, CATEGORY_TOL)
        .into_iter()
        .find(|h| h.equality.off_branch(&r).abs() <= CATEGORY_TOL)?;
    let (d, _) = pair_stats(p);
    let obs = observables();
    let mut terms = Vec::with_capacity(8);
    let mut xy_weight = 0.0;
    for j in 4..=7 {
        let rj = r.get(j);
        xy_weight += rj.abs();
        terms.push((
            rj.abs(),
            SeparableTerm::PauliMixture {
                observable: obs[j - 1],
                sign: if rj >= 0.0 { 1.0 } else { -1.0 },
            },
        ));
    }
    for k in 0..4 {
        terms.push((
            2.0 * (d[k] - xy_weight / 8.0),
            SeparableTerm::PairedProjector(k + 1),
        ));
    }
    Some((CertificateKind::CategoryBranch(hit), clean(terms)?))
}

/// Tries the zero-pair, equal-pairs and category-branch constructions in
/// that order; the first one with nonnegative weights is verified against
/// ρ and returned.
pub fn certify_separable(p: &ProbVector) -> Result<Option<SeparableCertificate>> {
    for attempt in [zero_pair, equal_pairs, category_branch] {
        if let Some((kind, terms)) = attempt(p) {
            return finish(p, kind, terms).map(Some);
        }
    }
    Ok(None)
}
