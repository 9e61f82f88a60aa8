//! Pauli strings, the GHZ eigenbasis and the two coordinate systems of a
//! GHZ-diagonal three-qubit state: mixing probabilities `p₁…p₈` and Pauli
//! correlation coefficients `r₁…r₇`.

mod pauli;

pub use pauli::{ps, Pauli, PauliString};

use std::fmt;

use rand::Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::linalg::{Matrix8, C64, DIM, ZERO};

/// Tolerance for the probability normalization check.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Rows of the ±1 map between `(1, r₁…r₇)` and `p₁…p₈`. Row 0 is all ones;
/// row `k` lists the signs of `p₁…p₈` in `r_k`. Column `i` is also the
/// eigenvalue pattern of the seven observables on `|ψ_{i+1}⟩`.
pub const SIGN_TABLE: [[i8; 8]; 8] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1],
    [-1, 1, 1, -1, 1, -1, -1, 1],
    [-1, 1, 1, -1, -1, 1, 1, -1],
    [-1, 1, -1, 1, 1, -1, 1, -1],
];

/// The observables carrying `r₁…r₇` in the Pauli expansion of the state.
pub fn observables() -> [PauliString; 7] {
    ["ZZI", "ZIZ", "IZZ", "XXX", "XYY", "YXY", "YYX"].map(ps)
}

/// Mixing probabilities `p₁…p₈` (stored 0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbVector([f64; 8]);

impl ProbVector {
    pub fn new(p: [f64; 8]) -> Result<Self> {
        for (i, &v) in p.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ProbabilityOutOfRange {
                    index: i + 1,
                    value: v,
                });
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::BadNormalization { sum });
        }
        Ok(ProbVector(p))
    }

    pub fn from_slice(p: &[f64]) -> Result<Self> {
        let arr: [f64; 8] = p.try_into().map_err(|_| Error::WrongLength {
            expected: 8,
            got: p.len(),
        })?;
        Self::new(arr)
    }

    pub fn uniform() -> Self {
        ProbVector([0.125; 8])
    }

    /// Draw from the flat Dirichlet distribution on the simplex
    /// (normalized i.i.d. unit exponentials).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut p = [0.0; 8];
        for x in p.iter_mut() {
            *x = rng.sample(Exp1);
        }
        let sum: f64 = p.iter().sum();
        for x in p.iter_mut() {
            *x /= sum;
        }
        ProbVector(p)
    }

    pub fn as_array(&self) -> &[f64; 8] {
        &self.0
    }

    /// `p_i` with the 1-based index used in formulas.
    pub fn get(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    pub fn mix(&self, other: &ProbVector, t: f64) -> ProbVector {
        let mut p = [0.0; 8];
        for i in 0..8 {
            p[i] = (1.0 - t) * self.0[i] + t * other.0[i];
        }
        ProbVector(p)
    }
}

impl fmt::Display for ProbVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| format!("{x}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Correlation coefficients `r₁…r₇` (stored 0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RVector([f64; 7]);

impl RVector {
    pub fn new(r: [f64; 7]) -> Result<Self> {
        for (i, &v) in r.iter().enumerate() {
            if !(-1.0 - NORMALIZATION_TOL..=1.0 + NORMALIZATION_TOL).contains(&v) {
                return Err(Error::CorrelationOutOfRange {
                    index: i + 1,
                    value: v,
                });
            }
        }
        Ok(RVector(r))
    }

    pub fn from_slice(r: &[f64]) -> Result<Self> {
        let arr: [f64; 7] = r.try_into().map_err(|_| Error::WrongLength {
            expected: 7,
            got: r.len(),
        })?;
        Self::new(arr)
    }

    pub fn zero() -> Self {
        RVector([0.0; 7])
    }

    pub fn as_array(&self) -> &[f64; 7] {
        &self.0
    }

    /// `r_k` with the 1-based index used in formulas.
    pub fn get(&self, k: usize) -> f64 {
        self.0[k - 1]
    }
}

/// Hermitian, unit-trace 8×8 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix8);

impl DensityMatrix {
    pub fn new(m: Matrix8) -> Result<Self> {
        let dev = m.hermiticity_deviation();
        if dev > 1e-12 {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::BadNormalization { sum: tr.re });
        }
        Ok(DensityMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.0
    }
}

/// Normalized 8-amplitude state vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector([C64; DIM]);

impl StateVector {
    pub fn new(v: [C64; DIM]) -> Result<Self> {
        let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::BadNormalization { sum: norm });
        }
        Ok(StateVector(v))
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(v: [C64; DIM]) -> Self {
        let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        StateVector(v.map(|x| x / norm))
    }

    pub fn amplitudes(&self) -> &[C64; DIM] {
        &self.0
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> C64 {
        (0..DIM).map(|i| self.0[i].conj() * other.0[i]).sum()
    }

    pub fn projector(&self) -> Matrix8 {
        Matrix8::outer(&self.0)
    }
}

/// Bit patterns `a_k` of the four GHZ pairs; the partner is `7 − a_k`.
pub const PAIR_PATTERNS: [usize; 4] = [0b000, 0b001, 0b010, 0b011];

/// `|ψ₁⟩…|ψ₈⟩`: `ψ_{2k+1}, ψ_{2k+2} = (|a_k⟩ ± |ā_k⟩)/√2`.
pub fn ghz_basis() -> [StateVector; 8] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    std::array::from_fn(|i| {
        let a = PAIR_PATTERNS[i / 2];
        let sign = if i % 2 == 0 { h } else { -h };
        let mut v = [ZERO; DIM];
        v[a] = C64::new(h, 0.0);
        v[7 - a] = C64::new(sign, 0.0);
        StateVector(v)
    })
}

pub fn r_from_p(p: &ProbVector) -> RVector {
    let mut r = [0.0; 7];
    for (k, rk) in r.iter_mut().enumerate() {
        *rk = SIGN_TABLE[k + 1]
            .iter()
            .zip(p.0.iter())
            .map(|(&s, &x)| f64::from(s) * x)
            .sum();
    }
    RVector(r)
}

/// Inverse of [`r_from_p`]: `p = Hᵀ·(1, r)/8`. Fails if `r` maps outside
/// the simplex by more than 1e-12; tiny negative round-off is clamped.
pub fn p_from_r(r: &RVector) -> Result<ProbVector> {
    let mut p = [0.0; 8];
    for (i, pi) in p.iter_mut().enumerate() {
        let mut acc = 1.0;
        for k in 0..7 {
            acc += f64::from(SIGN_TABLE[k + 1][i]) * r.0[k];
        }
        *pi = acc / 8.0;
    }
    for (i, pi) in p.iter_mut().enumerate() {
        if *pi < -NORMALIZATION_TOL {
            return Err(Error::OutsideSimplex {
                index: i + 1,
                value: *pi,
            });
        }
        *pi = pi.max(0.0);
    }
    ProbVector::new(p)
}

/// `Σ pᵢ |ψᵢ⟩⟨ψᵢ|`
pub fn density_from_p(p: &ProbVector) -> DensityMatrix {
    let mut m = Matrix8::zeros();
    for (psi, &w) in ghz_basis().iter().zip(p.0.iter()) {
        if w != 0.0 {
            m = m + psi.projector().scale(w);
        }
    }
    DensityMatrix(m)
}

/// `(III + Σ r_k O_k)/8`
pub fn density_from_r(r: &RVector) -> DensityMatrix {
    let mut m = Matrix8::identity();
    for (o, &rk) in observables().iter().zip(r.0.iter()) {
        m = m + o.matrix().scale(rk);
    }
    DensityMatrix(m.scale(0.125))
}
