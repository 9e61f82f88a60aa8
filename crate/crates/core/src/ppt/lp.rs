//! Exact feasibility test for small systems of affine constraints.
//!
//! Phase-one simplex with Bland's rule over rationals. The tableau runs on
//! `Ratio<i64>` with checked arithmetic and is rerun on `BigRational` if any
//! operation would overflow.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio, Rational64};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `Σ coeffs[i]·x[i]  (relation)  rhs`
#[derive(Debug, Clone, PartialEq)]
pub struct AffineConstraint {
    pub coeffs: Vec<Rational64>,
    pub relation: Relation,
    pub rhs: Rational64,
}

impl AffineConstraint {
    pub fn new(coeffs: Vec<Rational64>, relation: Relation, rhs: Rational64) -> Self {
        AffineConstraint {
            coeffs,
            relation,
            rhs,
        }
    }

    /// Convenience constructor from integer coefficients.
    pub fn int(coeffs: &[i64], relation: Relation, rhs: Rational64) -> Self {
        Self::new(
            coeffs.iter().map(|&c| Rational64::from_integer(c)).collect(),
            relation,
            rhs,
        )
    }
}

/// Constraints over `n_vars` real variables. Variables flagged in
/// `nonneg` are restricted to `x ≥ 0`; the rest are free.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearSystem {
    pub n_vars: usize,
    pub nonneg: Vec<bool>,
    pub constraints: Vec<AffineConstraint>,
}

impl LinearSystem {
    pub fn free(n_vars: usize) -> Self {
        LinearSystem {
            n_vars,
            nonneg: vec![false; n_vars],
            constraints: Vec::new(),
        }
    }

    pub fn nonnegative(n_vars: usize) -> Self {
        LinearSystem {
            n_vars,
            nonneg: vec![true; n_vars],
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: AffineConstraint) -> &mut Self {
        assert_eq!(c.coeffs.len(), self.n_vars, "coefficient count mismatch");
        self.constraints.push(c);
        self
    }
}

trait Exact: Clone + PartialOrd + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_r64(r: &Rational64) -> Self;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
}

impl Exact for Rational64 {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_r64(r: &Rational64) -> Self {
        *r
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Exact for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_r64(r: &Rational64) -> Self {
        Ratio::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// True iff the system has a solution.
pub fn lp_feasible(system: &LinearSystem) -> bool {
    match phase_one::<Rational64>(system) {
        Some(ans) => ans,
        None => phase_one::<BigRational>(system).expect("big rationals cannot overflow"),
    }
}

/// Returns `None` on arithmetic overflow.
fn phase_one<T: Exact>(sys: &LinearSystem) -> Option<bool> {
    // Standard form: free variables split as x = x⁺ − x⁻, every row gets
    // rhs ≥ 0, inequalities get a slack or surplus column.
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(sys.n_vars);
    let mut n_struct = 0;
    for v in 0..sys.n_vars {
        if sys.nonneg.get(v).copied().unwrap_or(false) {
            col_of.push((n_struct, None));
            n_struct += 1;
        } else {
            col_of.push((n_struct, Some(n_struct + 1)));
            n_struct += 2;
        }
    }
    let m = sys.constraints.len();
    if m == 0 {
        return Some(true);
    }
    let n_slack = sys
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();

    let mut rows: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut rhs: Vec<T> = Vec::with_capacity(m);
    let mut slack_basic: Vec<Option<usize>> = Vec::with_capacity(m);
    let mut slack = n_struct;
    for c in &sys.constraints {
        let mut row = vec![T::zero(); n_struct + n_slack];
        for (v, coef) in c.coeffs.iter().enumerate() {
            let a = T::from_r64(coef);
            let (plus, minus) = col_of[v];
            if let Some(mi) = minus {
                row[mi] = a.neg();
            }
            row[plus] = a;
        }
        let mut b = T::from_r64(&c.rhs);
        let mut slack_col = None;
        match c.relation {
            Relation::Le => {
                row[slack] = T::one();
                slack_col = Some(slack);
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = T::one().neg();
                slack_col = Some(slack);
                slack += 1;
            }
            Relation::Eq => {}
        }
        if b.is_neg() {
            b = b.neg();
            for x in row.iter_mut() {
                *x = x.neg();
            }
        }
        // A slack column with coefficient +1 can start in the basis.
        let basic = slack_col.filter(|&s| row[s].is_pos());
        slack_basic.push(basic);
        rows.push(row);
        rhs.push(b);
    }

    let n_real = n_struct + n_slack;
    let n_art = slack_basic.iter().filter(|s| s.is_none()).count();
    let n_cols = n_real + n_art;
    let mut basis = vec![0usize; m];
    let mut art = n_real;
    for (r, row) in rows.iter_mut().enumerate() {
        row.resize(n_cols, T::zero());
        match slack_basic[r] {
            Some(s) => basis[r] = s,
            None => {
                row[art] = T::one();
                basis[r] = art;
                art += 1;
            }
        }
    }
    if n_art == 0 {
        return Some(true);
    }

    // Reduced costs of w = Σ artificials: c_j − Σ_{artificial rows} a_rj.
    let mut cost = vec![T::zero(); n_cols];
    let mut cost_rhs = T::zero();
    for r in 0..m {
        if basis[r] >= n_real {
            for j in 0..n_real {
                cost[j] = cost[j].sub(&rows[r][j])?;
            }
            cost_rhs = cost_rhs.sub(&rhs[r])?;
        }
    }

    // Bland: smallest index with negative reduced cost; artificial columns
    // never re-enter.
    while let Some(enter) = (0..n_real).find(|&j| cost[j].is_neg()) {
        let mut leave: Option<(usize, T)> = None;
        for r in 0..m {
            if !rows[r][enter].is_pos() {
                continue;
            }
            let ratio = rhs[r].div(&rows[r][enter])?;
            let better = match &leave {
                None => true,
                Some((lr, best)) => {
                    ratio < *best || (ratio == *best && basis[r] < basis[*lr])
                }
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded direction cannot occur while minimizing a sum of
            // nonnegative artificials; treat defensively as optimal.
            break;
        };

        let piv = rows[pr][enter].clone();
        for j in 0..n_cols {
            if !rows[pr][j].is_zero() {
                rows[pr][j] = rows[pr][j].div(&piv)?;
            }
        }
        rhs[pr] = rhs[pr].div(&piv)?;
        let prow = rows[pr].clone();
        let prhs = rhs[pr].clone();
        for r in 0..m {
            if r == pr || rows[r][enter].is_zero() {
                continue;
            }
            let f = rows[r][enter].clone();
            for j in 0..n_cols {
                if !prow[j].is_zero() {
                    rows[r][j] = rows[r][j].sub(&f.mul(&prow[j])?)?;
                }
            }
            rhs[r] = rhs[r].sub(&f.mul(&prhs)?)?;
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..n_cols {
                if !prow[j].is_zero() {
                    cost[j] = cost[j].sub(&f.mul(&prow[j])?)?;
                }
            }
            cost_rhs = cost_rhs.sub(&f.mul(&prhs)?)?;
        }
        basis[pr] = enter;
    }
    Some(cost_rhs.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppt::inequality_rows;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn interval_examples() {
        let mut s = LinearSystem::free(1);
        s.push(AffineConstraint::int(&[1], Relation::Ge, r(0, 1)));
        s.push(AffineConstraint::int(&[1], Relation::Le, r(1, 1)));
        assert!(lp_feasible(&s));

        let mut s = LinearSystem::free(1);
        s.push(AffineConstraint::int(&[1], Relation::Ge, r(1, 1)));
        s.push(AffineConstraint::int(&[1], Relation::Le, r(0, 1)));
        assert!(!lp_feasible(&s));
    }

    #[test]
    fn free_variable_can_go_negative() {
        let mut s = LinearSystem::free(2);
        s.push(AffineConstraint::int(&[1, 1], Relation::Eq, r(-3, 2)));
        s.push(AffineConstraint::int(&[1, -1], Relation::Le, r(0, 1)));
        assert!(lp_feasible(&s));
        let mut s = LinearSystem::nonnegative(2);
        s.push(AffineConstraint::int(&[1, 1], Relation::Eq, r(-3, 2)));
        assert!(!lp_feasible(&s));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(lp_feasible(&LinearSystem::free(3)));
    }

    /// PPT polytope with (p₁, p₂) pinned, remaining six free nonnegative.
    fn pinned(p1: Rational64, p2: Rational64) -> LinearSystem {
        let mut s = LinearSystem::nonnegative(6);
        s.push(AffineConstraint::int(&[1; 6], Relation::Eq, r(1, 1) - p1 - p2));
        for row in inequality_rows() {
            let coeffs: Vec<i64> = row[2..].iter().map(|&c| i64::from(c)).collect();
            let fixed = Rational64::from_integer(row[0].into()) * p1
                + Rational64::from_integer(row[1].into()) * p2;
            s.push(AffineConstraint::int(&coeffs, Relation::Ge, -fixed));
        }
        s
    }

    #[test]
    fn pinned_point_matches_closed_form_region() {
        assert!(lp_feasible(&pinned(r(3, 10), r(1, 10))));
        assert!(!lp_feasible(&pinned(r(3, 10), r(0, 1))));
        assert!(lp_feasible(&pinned(r(1, 2), r(1, 2))));
    }

    #[test]
    fn big_rational_fallback_agrees() {
        let s = pinned(r(7, 40), r(3, 40));
        assert_eq!(phase_one::<Rational64>(&s), phase_one::<BigRational>(&s));
    }

    proptest! {
        // 4p₁ − 2p₂ ≤ 1, 4p₂ − 2p₁ ≤ 1 (plus the simplex) bound the
        // projection onto the (p₁, p₂) plane.
        #[test]
        fn projection_matches_inequalities(a in 0i64..=60, b in 0i64..=60) {
            let (p1, p2) = (r(a, 60), r(b, 60));
            let expected = p1 + p2 <= r(1, 1)
                && r(4, 1) * p1 - r(2, 1) * p2 <= r(1, 1)
                && r(4, 1) * p2 - r(2, 1) * p1 <= r(1, 1);
            prop_assert_eq!(lp_feasible(&pinned(p1, p2)), expected);
        }
    }
}
