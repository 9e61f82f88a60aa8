use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use rand::Rng;

use super::{witness_matrix, PauliSum, WitnessSpec};
use crate::linalg::{self, C64, DIM, ONE};
use crate::pauli_core::Pauli;

/// Pure product state `⊗_q (cos(θ_q/2), e^{iφ_q} sin(θ_q/2))`, angles stored
/// as `(θ₁, φ₁, θ₂, φ₂, θ₃, φ₃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductState {
    pub angles: [f64; 6],
}

/// Maps arbitrary real angles onto `θ ∈ [0, π]`, `φ ∈ [0, 2π)` describing
/// the same Bloch vector.
fn canonical_angles(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(TAU);
    let mut f = phi;
    if t > PI {
        t = TAU - t;
        f += PI;
    }
    let mut f = f.rem_euclid(TAU);
    if f >= TAU {
        f = 0.0;
    }
    (t, f)
}

fn angles_of(n: &[f64; 3]) -> (f64, f64) {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let z = (n[2] / norm).clamp(-1.0, 1.0);
    canonical_angles(z.acos(), n[1].atan2(n[0]))
}

fn bloch_of(theta: f64, phi: f64) -> [f64; 3] {
    let s = theta.sin();
    [s * phi.cos(), s * phi.sin(), theta.cos()]
}

impl ProductState {
    /// Canonicalizes the angles.
    pub fn new(angles: [f64; 6]) -> Self {
        let mut a = [0.0; 6];
        for q in 0..3 {
            let (t, f) = canonical_angles(angles[2 * q], angles[2 * q + 1]);
            a[2 * q] = t;
            a[2 * q + 1] = f;
        }
        ProductState { angles: a }
    }

    pub fn from_bloch(b: &[[f64; 3]; 3]) -> Self {
        let mut a = [0.0; 6];
        for q in 0..3 {
            let (t, f) = angles_of(&b[q]);
            a[2 * q] = t;
            a[2 * q + 1] = f;
        }
        ProductState { angles: a }
    }

    /// Haar-random product state.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut a = [0.0; 6];
        for q in 0..3 {
            let z: f64 = rng.random_range(-1.0..=1.0);
            a[2 * q] = z.acos();
            a[2 * q + 1] = rng.random_range(0.0..TAU);
        }
        ProductState { angles: a }
    }

    pub fn qubit(&self, q: usize) -> [C64; 2] {
        let (t, f) = (self.angles[2 * q], self.angles[2 * q + 1]);
        [
            C64::new((t / 2.0).cos(), 0.0),
            C64::from_polar((t / 2.0).sin(), f),
        ]
    }

    pub fn vector(&self) -> [C64; DIM] {
        let qs = [self.qubit(0), self.qubit(1), self.qubit(2)];
        std::array::from_fn(|k| qs[0][k >> 2] * qs[1][(k >> 1) & 1] * qs[2][k & 1])
    }

    pub fn bloch(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|q| bloch_of(self.angles[2 * q], self.angles[2 * q + 1]))
    }
}

/// `⟨ν|W|ν⟩` from the realized product vector and witness matrix.
pub fn product_expectation(w: &WitnessSpec, s: &ProductState) -> f64 {
    witness_matrix(w).expectation(&s.vector())
}

/// Angular form of the product expectation for
/// `III − IZZ + cos ψ (XXX + XYY) + sin ψ (YXY + YYX)`.
pub fn canonical_closed_form(psi: f64, s: &ProductState) -> f64 {
    let [t1, f1, t2, f2, t3, f3] = s.angles;
    1.0 - t2.cos() * t3.cos()
        + t1.sin()
            * t2.sin()
            * t3.sin()
            * (psi.cos() * f1.cos() * (f2 - f3).cos() + psi.sin() * f1.sin() * (f2 + f3).sin())
}

/// Terms grouped by the qubit-1 label, with the qubit-2/3 labels kept.
struct Reduced {
    terms: [Vec<(f64, Pauli, Pauli)>; 4],
}

impl Reduced {
    fn new(sum: &PauliSum) -> Self {
        let mut terms: [Vec<(f64, Pauli, Pauli)>; 4] = Default::default();
        for &(c, s) in &sum.0 {
            if c != 0.0 {
                terms[s.labels[0] as usize].push((c, s.labels[1], s.labels[2]));
            }
        }
        Reduced { terms }
    }

    /// Coefficients `(x₀, x⃗)` of the affine function of qubit 1's Bloch
    /// vector, for fixed qubits 2 and 3.
    fn coefficients(&self, b2: &[f64; 3], b3: &[f64; 3]) -> [f64; 4] {
        let mut x = [0.0; 4];
        for (slot, terms) in x.iter_mut().zip(self.terms.iter()) {
            for &(c, p2, p3) in terms {
                *slot += c * p2.bloch_component(b2) * p3.bloch_component(b3);
            }
        }
        x
    }

    /// Minimum over qubit 1: `x₀ − |x⃗|`.
    fn value(&self, b2: &[f64; 3], b3: &[f64; 3]) -> f64 {
        let x = self.coefficients(b2, b3);
        x[0] - (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt()
    }

    fn value_at(&self, v: &[f64; 4]) -> f64 {
        self.value(&bloch_of(v[0], v[1]), &bloch_of(v[2], v[3]))
    }
}

const GRID: usize = 24;
const N_STARTS: usize = 12;
const EVAL_BUDGET: usize = 100_000;
const STEP_TOL: f64 = 1e-9;

/// Global minimum of `⟨ν|H|ν⟩` over pure product states for a Pauli sum.
///
/// Qubit 1 is minimized analytically (the expectation is affine in its
/// Bloch vector). The four angles of qubits 2 and 3 are scanned on a
/// 24-point grid each, and the best grid points are polished by a
/// coordinate pattern search. The returned value is re-evaluated from the
/// realized state vector.
pub fn min_over_sum(sum: &PauliSum) -> (f64, ProductState) {
    let red = Reduced::new(sum);
    let thetas: Vec<f64> = (0..GRID).map(|k| PI * k as f64 / (GRID - 1) as f64).collect();
    let phis: Vec<f64> = (0..GRID).map(|k| TAU * k as f64 / GRID as f64).collect();
    let mut points: Vec<([f64; 2], [f64; 3])> = Vec::with_capacity(GRID * GRID);
    for &t in &thetas {
        for &f in &phis {
            points.push(([t, f], bloch_of(t, f)));
        }
    }

    // Keep the N_STARTS lowest grid values.
    let mut starts: Vec<(f64, [f64; 4])> = Vec::with_capacity(N_STARTS + 1);
    for (a2, b2) in &points {
        for (a3, b3) in &points {
            let v = red.value(b2, b3);
            if starts.len() < N_STARTS || v < starts[starts.len() - 1].0 {
                let pos = starts.partition_point(|s| s.0 <= v);
                starts.insert(pos, (v, [a2[0], a2[1], a3[0], a3[1]]));
                starts.truncate(N_STARTS);
            }
        }
    }

    let mut evals = 0;
    let mut best = starts[0];
    let per_start = EVAL_BUDGET / N_STARTS;
    for &(v0, x0) in &starts {
        let (v, x) = pattern_search(&red, v0, x0, PI / (GRID - 1) as f64, per_start, &mut evals);
        if v < best.0 {
            best = (v, x);
        }
    }

    let x = best.1;
    let b2 = bloch_of(x[0], x[1]);
    let b3 = bloch_of(x[2], x[3]);
    let c = red.coefficients(&b2, &b3);
    let norm = (c[1] * c[1] + c[2] * c[2] + c[3] * c[3]).sqrt();
    let b1 = if norm > 0.0 {
        [-c[1] / norm, -c[2] / norm, -c[3] / norm]
    } else {
        [0.0, 0.0, 1.0]
    };
    let state = ProductState::from_bloch(&[b1, b2, b3]);
    let value = sum.matrix().expectation(&state.vector());
    (value, state)
}

fn pattern_search(
    red: &Reduced,
    mut v: f64,
    mut x: [f64; 4],
    mut step: f64,
    budget: usize,
    evals: &mut usize,
) -> (f64, [f64; 4]) {
    let mut used = 0;
    while step > STEP_TOL && used < budget {
        let mut improved = false;
        for d in 0..4 {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[d] += dir * step;
                let vy = red.value_at(&y);
                used += 1;
                if vy < v {
                    v = vy;
                    x = y;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    *evals += used;
    (v, x)
}

/// [`min_over_sum`] for a family member.
pub fn min_over_products(w: &WitnessSpec) -> (f64, ProductState) {
    min_over_sum(&w.terms())
}

/// The four zero-expectation product states of
/// `III − IZZ + cos ψ (XXX + XYY) + sin ψ (YXY + YYX)` with
/// `θ₁ = θ₂ = θ₃ = π/2`. Qubit 1's phase is chosen so the bracketed term
/// of [`canonical_closed_form`] equals −1.
pub fn kernel_branch_states(psi: f64) -> [ProductState; 4] {
    let h = FRAC_PI_2;
    let branch = |f1: f64, f2: f64, f3: f64| ProductState::new([h, f1, h, f2, h, f3]);
    [
        branch(psi + PI, FRAC_PI_4, FRAC_PI_4),
        branch(PI - psi, -FRAC_PI_4, -FRAC_PI_4),
        branch(psi, FRAC_PI_4, -3.0 * FRAC_PI_4),
        branch(-psi, 3.0 * FRAC_PI_4, -FRAC_PI_4),
    ]
}

/// Basis of the states orthogonal to the kernel vectors
/// `|α⟩|00⟩ + |β⟩|11⟩`: `|0⟩|01⟩, |1⟩|01⟩, |0⟩|10⟩, |1⟩|10⟩`, i.e. the
/// coordinates `(α₁, α₂, β₁, β₂)`.
const PHI_BASIS: [usize; 4] = [0b001, 0b101, 0b010, 0b110];

/// Row `i` holds the coefficients of `⟨ν_i|Φ⟩` in `(α₁, α₂, β₁, β₂)`.
pub fn obstruction_matrix(psi: f64) -> Vec<Vec<C64>> {
    kernel_branch_states(psi)
        .iter()
        .map(|s| {
            let v = s.vector();
            PHI_BASIS.iter().map(|&k| v[k].conj()).collect()
        })
        .collect()
}

/// The same conditions written with the common phase of each row removed
/// and the `α₂, β₂` columns sign-flipped.
pub fn reference_obstruction_matrix(psi: f64) -> Vec<Vec<C64>> {
    let em = C64::from_polar(1.0, -psi);
    let ep = C64::from_polar(1.0, psi);
    vec![
        vec![ONE, em, ONE, em],
        vec![ONE, ep, ONE, ep],
        vec![-ONE, em, ONE, -em],
        vec![-ONE, ep, ONE, -ep],
    ]
}

/// Rank of the orthogonality system; 4 means no positive operator can be
/// subtracted, so the witness is optimal.
pub fn optimality_obstruction(psi: f64) -> usize {
    linalg::rank(&obstruction_matrix(psi), 1e-10)
}
