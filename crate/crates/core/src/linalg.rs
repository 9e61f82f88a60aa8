//! Small dense complex linear algebra: the fixed 8×8 matrix type used for
//! three-qubit operators, and a cyclic Jacobi eigensolver for Hermitian
//! matrices of any small size.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const DIM: usize = 8;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense 8×8 complex matrix. Row/column `4·n₁ + 2·n₂ + n₃` is the
/// computational basis state `|n₁n₂n₃⟩`, qubit 1 leftmost.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix8(pub [[C64; DIM]; DIM]);

impl Matrix8 {
    pub fn zeros() -> Self {
        Matrix8([[ZERO; DIM]; DIM])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn diagonal(d: [f64; DIM]) -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            m.0[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    /// `|v⟩⟨v|`
    pub fn outer(v: &[C64; DIM]) -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            for j in 0..DIM {
                m.0[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= c;
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            for j in 0..DIM {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..DIM).map(|i| self.0[i][i]).sum()
    }

    /// `Tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &Matrix8) -> C64 {
        let mut acc = ZERO;
        for i in 0..DIM {
            for k in 0..DIM {
                acc += self.0[i][k] * other.0[k][i];
            }
        }
        acc
    }

    pub fn apply(&self, v: &[C64; DIM]) -> [C64; DIM] {
        let mut out = [ZERO; DIM];
        for i in 0..DIM {
            out[i] = (0..DIM).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// `⟨v|M|v⟩`, real part (imaginary part vanishes for Hermitian M).
    pub fn expectation(&self, v: &[C64; DIM]) -> f64 {
        let mv = self.apply(v);
        (0..DIM).map(|i| v[i].conj() * mv[i]).sum::<C64>().re
    }

    pub fn max_abs_diff(&self, other: &Matrix8) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..DIM {
            for j in 0..DIM {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest `|M_ij − conj(M_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..DIM {
            for j in i..DIM {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.0.iter().map(|r| r.to_vec()).collect()
    }
}

impl std::fmt::Debug for Matrix8 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix8[")?;
        for row in &self.0 {
            write!(f, " ")?;
            for x in row {
                write!(f, " {:+.4}{:+.4}i", x.re, x.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix8 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix8 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Add for Matrix8 {
    type Output = Matrix8;
    fn add(mut self, rhs: Matrix8) -> Matrix8 {
        for i in 0..DIM {
            for j in 0..DIM {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for Matrix8 {
    type Output = Matrix8;
    fn sub(mut self, rhs: Matrix8) -> Matrix8 {
        for i in 0..DIM {
            for j in 0..DIM {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Mul for Matrix8 {
    type Output = Matrix8;
    fn mul(self, rhs: Matrix8) -> Matrix8 {
        let mut out = Matrix8::zeros();
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..DIM {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix stored row-major in `a`
/// (`n × n`). Returns eigenvalues in ascending order and, if requested,
/// the matching orthonormal eigenvectors (`vectors[k]` belongs to
/// `values[k]`).
///
/// Cyclic complex Jacobi: each rotation first removes the phase of the
/// pivot `a_pq`, then applies the real symmetric rotation that zeroes it.
fn jacobi(a: &mut [C64], n: usize, mut v: Option<&mut [C64]>) -> Vec<f64> {
    debug_assert_eq!(a.len(), n * n);
    if let Some(v) = v.as_deref_mut() {
        v.iter_mut().for_each(|x| *x = ZERO);
        for i in 0..n {
            v[i * n + i] = ONE;
        }
    }
    let frob: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let target = (1e-15 * frob).max(f64::MIN_POSITIVE).powi(2);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = apq.norm();
                if g <= f64::MIN_POSITIVE || g * g <= target * 1e-6 {
                    continue;
                }
                let phase = apq / g; // e^{iφ}
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let ph_conj = phase.conj();

                // A ← A·J with J_pp = c, J_pq = s, J_qp = −s·e^{−iφ}, J_qq = c·e^{−iφ}
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * ph_conj * s;
                    a[k * n + q] = akp * s + akq * ph_conj * c;
                }
                // A ← J†·A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * phase * s;
                    a[q * n + k] = apk * s + aqk * phase * c;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = C64::new(a[q * n + q].re, 0.0);

                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * c - vkq * ph_conj * s;
                        v[k * n + q] = vkp * s + vkq * ph_conj * c;
                    }
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i].re).collect()
}

fn check_hermitian(a: &[C64], n: usize, tol: f64) -> Result<()> {
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[i * n + j] - a[j * n + i].conj()).norm());
        }
    }
    if worst > tol {
        Err(Error::NotHermitian { deviation: worst })
    } else {
        Ok(())
    }
}

/// Hermiticity tolerance accepted by the eigen routines.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues (ascending) of a Hermitian matrix given as rows.
pub fn hermitian_eigenvalues(rows: &[Vec<C64>]) -> Result<Vec<f64>> {
    let n = rows.len();
    let mut a: Vec<C64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    if a.len() != n * n {
        return Err(Error::WrongLength {
            expected: n * n,
            got: a.len(),
        });
    }
    check_hermitian(&a, n, HERMITIAN_TOL)?;
    let mut values = jacobi(&mut a, n, None);
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Eigenvalues (ascending) with orthonormal eigenvectors.
pub fn hermitian_eigen(rows: &[Vec<C64>]) -> Result<(Vec<f64>, Vec<Vec<C64>>)> {
    let n = rows.len();
    let mut a: Vec<C64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    if a.len() != n * n {
        return Err(Error::WrongLength {
            expected: n * n,
            got: a.len(),
        });
    }
    check_hermitian(&a, n, HERMITIAN_TOL)?;
    let mut v = vec![ZERO; n * n];
    let values = jacobi(&mut a, n, Some(&mut v));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok((sorted_values, vectors))
}

/// Smallest eigenvalue of an 8×8 Hermitian matrix.
pub fn min_eigenvalue(h: &Matrix8) -> Result<f64> {
    let mut a = [ZERO; DIM * DIM];
    for i in 0..DIM {
        a[i * DIM..(i + 1) * DIM].copy_from_slice(&h.0[i]);
    }
    check_hermitian(&a, DIM, HERMITIAN_TOL)?;
    let values = jacobi(&mut a, DIM, None);
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

/// All eigenvalues (ascending) of an 8×8 Hermitian matrix.
pub fn eigenvalues8(h: &Matrix8) -> Result<[f64; DIM]> {
    let mut a = [ZERO; DIM * DIM];
    for i in 0..DIM {
        a[i * DIM..(i + 1) * DIM].copy_from_slice(&h.0[i]);
    }
    check_hermitian(&a, DIM, HERMITIAN_TOL)?;
    let mut values = jacobi(&mut a, DIM, None);
    values.sort_by(f64::total_cmp);
    let mut out = [0.0; DIM];
    out.copy_from_slice(&values);
    Ok(out)
}

/// Numerical rank by Gaussian elimination with complete pivoting; entries
/// below `rel_tol · max|a_ij|` count as zero.
pub fn rank(rows: &[Vec<C64>], rel_tol: f64) -> usize {
    let mut m: Vec<Vec<C64>> = rows.to_vec();
    let nr = m.len();
    if nr == 0 {
        return 0;
    }
    let nc = m[0].len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x.norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let tol = rel_tol * scale;
    let mut rank = 0;
    let mut cols: Vec<usize> = (0..nc).collect();
    for step in 0..nr.min(nc) {
        let mut best = (step, step, 0.0);
        for (i, row) in m.iter().enumerate().skip(step) {
            for (jj, &j) in cols.iter().enumerate().skip(step) {
                let mag = row[j].norm();
                if mag > best.2 {
                    best = (i, jj, mag);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        m.swap(step, best.0);
        cols.swap(step, best.1);
        let pc = cols[step];
        let pivot = m[step][pc];
        for i in (step + 1)..nr {
            let f = m[i][pc] / pivot;
            if f == ZERO {
                continue;
            }
            for &j in &cols {
                let sub = f * m[step][j];
                m[i][j] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal_minimum() {
        assert!((min_eigenvalue(&Matrix8::identity()).unwrap() - 1.0).abs() < 1e-14);
        let d = Matrix8::diagonal([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert!((min_eigenvalue(&d).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = Matrix8::identity();
        m.0[0][1] = C64::new(0.5, 0.0);
        assert!(matches!(
            min_eigenvalue(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn two_by_two_with_phase() {
        // [[1, i],[−i, 1]] has eigenvalues 0 and 2
        let rows = vec![
            vec![ONE, C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), ONE],
        ];
        let (vals, vecs) = hermitian_eigen(&rows).unwrap();
        assert!((vals[0] - 0.0).abs() < 1e-14);
        assert!((vals[1] - 2.0).abs() < 1e-14);
        // M v = λ v
        for (k, lam) in vals.iter().enumerate() {
            for i in 0..2 {
                let mv: C64 = (0..2).map(|j| rows[i][j] * vecs[k][j]).sum();
                assert!((mv - vecs[k][i] * lam).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn rank_of_simple_systems() {
        let id: Vec<Vec<C64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { ONE } else { ZERO }).collect())
            .collect();
        assert_eq!(rank(&id, 1e-12), 4);
        let dup = vec![vec![ONE, ONE], vec![ONE, ONE]];
        assert_eq!(rank(&dup, 1e-12), 1);
    }
}
