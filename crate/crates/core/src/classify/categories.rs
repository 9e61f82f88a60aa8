//! The 72 saturation equalities `1 ± r_i = r_j ± r_k` and their split into
//! three categories, evaluated through direct probability identities rather
//! than through `r`.

use std::fmt;

use crate::pauli_core::{ProbVector, RVector};
use crate::witness::{NonlinearFamilyId, Partition, Sign};

/// `1 + s·r_i = r_j + t·r_k`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Equality {
    pub s: Sign,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub t: Sign,
}

impl Equality {
    const fn new(s: Sign, i: usize, j: usize, k: usize, t: Sign) -> Self {
        Equality { s, i, j, k, t }
    }

    /// The complementary pair `{l, m}` of `{j, k}` in `{4, 5, 6, 7}`.
    pub fn complement(&self) -> (usize, usize) {
        let rest: Vec<usize> = (4..=7).filter(|&x| x != self.j && x != self.k).collect();
        (rest[0], rest[1])
    }

    /// Witness whose envelope is `(1 + s r_i) − √((r_j + t r_k)² + (r_l + t r_m)²)`.
    pub fn witness(&self) -> NonlinearFamilyId {
        NonlinearFamilyId {
            outer: self.s,
            z_index: self.i,
            inner: self.t,
            partition: Partition::containing(self.j, self.k).expect("pair inside {4..7}"),
        }
    }

    /// `2·(p-combination)` equal to `1 + s r_i`.
    pub fn lhs(&self, p: &ProbVector) -> f64 {
        2.0 * dot(&lhs_row(self.i, self.s), p)
    }

    /// `2·(p-combination)` equal to `r_j + t r_k`.
    pub fn rhs(&self, p: &ProbVector) -> f64 {
        2.0 * dot(&rhs_row(self.j, self.k, self.t), p)
    }

    /// `r_l + t·r_m`; a hit with this equal to zero lies on the separable
    /// branch.
    pub fn off_branch(&self, r: &RVector) -> f64 {
        let (l, m) = self.complement();
        r.get(l) + self.t.value() * r.get(m)
    }
}

impl fmt::Display for Equality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "1{}r{} = r{}{}r{}",
            self.s.symbol(),
            self.i,
            self.j,
            self.t.symbol(),
            self.k
        )
    }
}

fn dot(row: &[i8; 8], p: &ProbVector) -> f64 {
    row.iter()
        .zip(p.as_array().iter())
        .map(|(&c, &x)| f64::from(c) * x)
        .sum()
}

/// `1 ± r_i = 2·(sum of four probabilities)`.
pub fn lhs_row(i: usize, s: Sign) -> [i8; 8] {
    let idx: [usize; 4] = match (i, s) {
        (1, Sign::Plus) => [1, 2, 3, 4],
        (1, Sign::Minus) => [5, 6, 7, 8],
        (2, Sign::Plus) => [1, 2, 5, 6],
        (2, Sign::Minus) => [3, 4, 7, 8],
        (3, Sign::Plus) => [1, 2, 7, 8],
        (3, Sign::Minus) => [3, 4, 5, 6],
        _ => panic!("z index {i} out of range"),
    };
    let mut row = [0i8; 8];
    for x in idx {
        row[x - 1] = 1;
    }
    row
}

/// `r_j ± r_k = 2·(signed sum of four probabilities)`, `4 ≤ j < k ≤ 7`.
pub fn rhs_row(j: usize, k: usize, t: Sign) -> [i8; 8] {
    use Sign::{Minus as M, Plus as P};
    match (j, k, t) {
        (4, 5, P) => [0, 0, 1, -1, 1, -1, 0, 0],
        (6, 7, P) => [-1, 1, 0, 0, 0, 0, 1, -1],
        (4, 5, M) => [1, -1, 0, 0, 0, 0, 1, -1],
        (6, 7, M) => [0, 0, 1, -1, -1, 1, 0, 0],
        (4, 6, P) => [0, 0, 1, -1, 0, 0, 1, -1],
        (5, 7, P) => [-1, 1, 0, 0, 1, -1, 0, 0],
        (4, 6, M) => [1, -1, 0, 0, 1, -1, 0, 0],
        (5, 7, M) => [0, 0, 1, -1, 0, 0, -1, 1],
        (4, 7, P) => [0, 0, 0, 0, 1, -1, 1, -1],
        (5, 6, P) => [-1, 1, 1, -1, 0, 0, 0, 0],
        (4, 7, M) => [1, -1, 1, -1, 0, 0, 0, 0],
        (5, 6, M) => [0, 0, 0, 0, 1, -1, -1, 1],
        _ => panic!("pair ({j}, {k}) out of range"),
    }
}

use Sign::{Minus as M, Plus as P};

const CATEGORY_1: [Equality; 12] = [
    Equality::new(P, 1, 5, 6, P),
    Equality::new(M, 1, 5, 6, M),
    Equality::new(P, 1, 4, 7, M),
    Equality::new(M, 1, 4, 7, P),
    Equality::new(P, 2, 5, 7, P),
    Equality::new(M, 2, 5, 7, M),
    Equality::new(P, 2, 4, 6, M),
    Equality::new(M, 2, 4, 6, P),
    Equality::new(P, 3, 6, 7, P),
    Equality::new(M, 3, 6, 7, M),
    Equality::new(P, 3, 4, 5, M),
    Equality::new(M, 3, 4, 5, P),
];

const CATEGORY_3: [Equality; 12] = [
    Equality::new(P, 1, 4, 7, P),
    Equality::new(M, 1, 4, 7, M),
    Equality::new(P, 1, 5, 6, M),
    Equality::new(M, 1, 5, 6, P),
    Equality::new(P, 2, 4, 6, P),
    Equality::new(M, 2, 4, 6, M),
    Equality::new(P, 2, 5, 7, M),
    Equality::new(M, 2, 5, 7, P),
    Equality::new(P, 3, 4, 5, P),
    Equality::new(M, 3, 4, 5, M),
    Equality::new(P, 3, 6, 7, M),
    Equality::new(M, 3, 6, 7, P),
];

/// Pairs whose equalities form category 2 for each `i`.
const CATEGORY_2_PAIRS: [[(usize, usize); 4]; 3] = [
    [(4, 5), (6, 7), (4, 6), (5, 7)],
    [(4, 5), (6, 7), (4, 7), (5, 6)],
    [(4, 6), (5, 7), (4, 7), (5, 6)],
];

/// All 72 equalities with their category, categories in order 1, 2, 3.
pub fn all_equalities() -> Vec<(u8, Equality)> {
    let mut out: Vec<(u8, Equality)> = CATEGORY_1.iter().map(|e| (1, *e)).collect();
    for i in 1..=3 {
        for (j, k) in CATEGORY_2_PAIRS[i - 1] {
            for s in Sign::ALL {
                for t in Sign::ALL {
                    out.push((2, Equality::new(s, i, j, k, t)));
                }
            }
        }
    }
    out.extend(CATEGORY_3.iter().map(|e| (3, *e)));
    out
}

/// An equality satisfied by a state, within tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CategoryHit {
    pub category: u8,
    pub equality: Equality,
    /// `LHS − RHS`
    pub residual: f64,
}

pub const CATEGORY_TOL: f64 = 1e-9;

/// Every equality whose residual is within `tol`.
pub fn category_of(p: &ProbVector, tol: f64) -> Vec<CategoryHit> {
    all_equalities()
        .into_iter()
        .filter_map(|(category, equality)| {
            let residual = equality.lhs(p) - equality.rhs(p);
            (residual.abs() <= tol).then_some(CategoryHit {
                category,
                equality,
                residual,
            })
        })
        .collect()
}
