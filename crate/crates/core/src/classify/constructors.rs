//! Random states on the separable patterns: the zero-pair and equal-pairs
//! cases, the separable branch of each category and the separable edge of
//! the category-1 triangle. Branch samplers reject non-PPT draws.

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::pauli_core::ProbVector;
use crate::ppt::{is_ppt, special_family, SpecialFamilyParams, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    ZeroPair,
    EqualPairs,
    Category1Branch,
    Category2Branch,
    Category3Branch,
    TriangleEdge,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::ZeroPair,
        Construction::EqualPairs,
        Construction::Category1Branch,
        Construction::Category2Branch,
        Construction::Category3Branch,
        Construction::TriangleEdge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::ZeroPair => "zero-pair",
            Construction::EqualPairs => "equal-pairs",
            Construction::Category1Branch => "category1-branch",
            Construction::Category2Branch => "category2-branch",
            Construction::Category3Branch => "category3-branch",
            Construction::TriangleEdge => "triangle-edge",
        }
    }

    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> ProbVector {
        match self {
            Construction::ZeroPair => zero_pair(rng),
            Construction::EqualPairs => equal_pairs(rng),
            Construction::Category1Branch => category1_branch(rng),
            Construction::Category2Branch => category2_branch(rng),
            Construction::Category3Branch => category3_branch(rng),
            Construction::TriangleEdge => triangle_edge(rng),
        }
    }
}

fn flat_simplex<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> [f64; N] {
    let e: [f64; N] = std::array::from_fn(|_| Exp1.sample(rng));
    let s: f64 = e.iter().sum();
    e.map(|x| x / s)
}

fn ppt(p: [f64; 8]) -> Option<ProbVector> {
    let p = ProbVector::new(p).ok()?;
    is_ppt(&p, DEFAULT_TOL).ok()?.pass.then_some(p)
}

/// One empty pair, the other three pairs split evenly.
pub fn zero_pair<R: Rng + ?Sized>(rng: &mut R) -> ProbVector {
    let empty = rng.random_range(0..4);
    let t: [f64; 3] = flat_simplex(rng);
    let mut p = [0.0; 8];
    let mut it = t.iter();
    for k in (0..4).filter(|&k| k != empty) {
        let d = it.next().unwrap() / 2.0;
        p[2 * k] = d;
        p[2 * k + 1] = d;
    }
    ProbVector::new(p).expect("convex weights")
}

/// Three evenly split pairs and one pair with coherence bounded by the
/// smallest half-pair.
pub fn equal_pairs<R: Rng + ?Sized>(rng: &mut R) -> ProbVector {
    let t: [f64; 4] = flat_simplex(rng);
    let d = t.map(|x| x / 2.0);
    let m = d.iter().copied().fold(f64::INFINITY, f64::min);
    let star = rng.random_range(0..4);
    let x = rng.random_range(-1.0..=1.0) * m;
    let mut p = [0.0; 8];
    for k in 0..4 {
        let c = if k == star { x } else { 0.0 };
        p[2 * k] = (d[k] + c).max(0.0);
        p[2 * k + 1] = (d[k] - c).max(0.0);
    }
    ProbVector::new(p).expect("convex weights")
}

/// `p₂ = p₄ = 0`, `p₁ = p₃`, `p₅ + p₈ = p₆ + p₇`.
pub fn category1_branch<R: Rng + ?Sized>(rng: &mut R) -> ProbVector {
    loop {
        let a: f64 = rng.random_range(0.0..=0.5);
        let h = (1.0 - 2.0 * a) / 2.0;
        let (l, m): (f64, f64) = (rng.random(), rng.random());
        let p = [a, 0.0, a, 0.0, l * h, m * h, (1.0 - m) * h, (1.0 - l) * h];
        if let Some(p) = ppt(p) {
            return p;
        }
    }
}

/// `p₄ = 0`, `p₃ = p₁ + p₂`, `p₇ = p₃ + p₈`, `p₁ + p₆ = p₂ + p₅`.
pub fn category2_branch<R: Rng + ?Sized>(rng: &mut R) -> ProbVector {
    loop {
        // 4p₁ + 2p₂ + 2p₆ + 2p₈ = 1 once p₃, p₅, p₇ are eliminated.
        let w: [f64; 4] = flat_simplex(rng);
        let (p1, p2, p6, p8) = (w[0] / 4.0, w[1] / 2.0, w[2] / 2.0, w[3] / 2.0);
        let p3 = p1 + p2;
        let p5 = p6 + p1 - p2;
        if p5 < 0.0 {
            continue;
        }
        if let Some(p) = ppt([p1, p2, p3, 0.0, p5, p6, p3 + p8, p8]) {
            return p;
        }
    }
}

/// Boundary family with `p₅ = p₇` (hence `p₆ = p₈`).
pub fn category3_branch<R: Rng + ?Sized>(rng: &mut R) -> ProbVector {
    let alpha = rng.random_range(-1.0..=0.5);
    let p4 = rng.random_range(0.0..=1.0) / (4.0 * (1.0 - alpha));
    let params = SpecialFamilyParams {
        alpha,
        p4,
        split5: 0.0,
        split7: 0.0,
    };
    let split = rng.random_range(0.0..=1.0) * params.s().max(0.0);
    special_family(&SpecialFamilyParams {
        split5: split,
        split7: split,
        ..params
    })
    .expect("parameters drawn inside the family's ranges")
}

/// Edge of the category-1 triangle from `(1/4, 0, 1/4)` to `(1/2, 1/2, 0)`.
pub fn triangle_edge<R: Rng + ?Sized>(rng: &mut R) -> ProbVector {
    let t: f64 = rng.random_range(0.0..=0.5);
    let q = (1.0 - 2.0 * t) / 4.0;
    let p1 = (1.0 + 2.0 * t) / 4.0;
    ProbVector::new([p1, t, q, 0.0, q, 0.0, q, 0.0]).expect("edge point")
}
