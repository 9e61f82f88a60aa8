//! The linear witness family
//! `W = III ± Z_i + cos ψ (O_j ± O_k) + sin ψ (O_l ± O_m)`, its envelope over
//! `ψ` (the nonlinear witnesses), and the product-state checks that certify
//! each member as an entanglement witness.

mod product;

pub use product::{
    canonical_closed_form, kernel_branch_states, min_over_products, min_over_sum, obstruction_matrix,
    optimality_obstruction, product_expectation, reference_obstruction_matrix, ProductState,
};

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix8};
use crate::pauli_core::{density_from_p, observables, r_from_p, PauliString, ProbVector, RVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn parse(c: char) -> Result<Sign> {
        match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("expected sign, got {c:?}"))),
        }
    }
}

/// Split of `{4,5,6,7}` into the cosine pair (which holds 4) and the sine
/// pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Partition {
    P45_67,
    P46_57,
    P47_56,
}

impl Partition {
    pub const ALL: [Partition; 3] = [Partition::P45_67, Partition::P46_57, Partition::P47_56];

    /// `((j, k), (l, m))`
    pub fn pairs(self) -> ((usize, usize), (usize, usize)) {
        match self {
            Partition::P45_67 => ((4, 5), (6, 7)),
            Partition::P46_57 => ((4, 6), (5, 7)),
            Partition::P47_56 => ((4, 7), (5, 6)),
        }
    }

    /// The partition containing the pair `{a, b}`.
    pub fn containing(a: usize, b: usize) -> Option<Partition> {
        let (a, b) = (a.min(b), a.max(b));
        Self::ALL.into_iter().find(|p| {
            let ((j, k), (l, m)) = p.pairs();
            (j, k) == (a, b) || (l, m) == (a, b)
        })
    }
}

/// A witness family member without its angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonlinearFamilyId {
    pub outer: Sign,
    pub z_index: usize,
    pub inner: Sign,
    pub partition: Partition,
}

impl NonlinearFamilyId {
    pub fn new(outer: Sign, z_index: usize, inner: Sign, partition: Partition) -> Result<Self> {
        if !(1..=3).contains(&z_index) {
            return Err(Error::InvalidQubit(z_index));
        }
        Ok(NonlinearFamilyId {
            outer,
            z_index,
            inner,
            partition,
        })
    }

    /// All 36 ids, ordered by outer sign, `i`, inner sign, partition.
    pub fn all() -> Vec<NonlinearFamilyId> {
        let mut out = Vec::with_capacity(36);
        for outer in Sign::ALL {
            for z_index in 1..=3 {
                for inner in Sign::ALL {
                    for partition in Partition::ALL {
                        out.push(NonlinearFamilyId {
                            outer,
                            z_index,
                            inner,
                            partition,
                        });
                    }
                }
            }
        }
        out
    }

    /// `(a, b) = (r_j ± r_k, r_l ± r_m)`
    pub fn ab(&self, r: &RVector) -> (f64, f64) {
        let ((j, k), (l, m)) = self.partition.pairs();
        let s = self.inner.value();
        (r.get(j) + s * r.get(k), r.get(l) + s * r.get(m))
    }

    /// `1 ± r_i`
    pub fn offset(&self, r: &RVector) -> f64 {
        1.0 + self.outer.value() * r.get(self.z_index)
    }

    pub fn with_psi(self, psi: f64) -> WitnessSpec {
        WitnessSpec { id: self, psi }
    }
}

impl fmt::Display for NonlinearFamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ((j, k), (l, m)) = self.partition.pairs();
        write!(
            f,
            "{}{}{}({j}{k})({l}{m})",
            self.outer.symbol(),
            self.z_index,
            self.inner.symbol()
        )
    }
}

impl FromStr for NonlinearFamilyId {
    type Err = Error;
    /// Parses the `Display` form, e.g. `+1-(47)(56)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid witness id {s:?}"));
        let c: Vec<char> = s.trim().chars().collect();
        if c.len() != 11 || c[3] != '(' || c[6] != ')' || c[7] != '(' || c[10] != ')' {
            return Err(bad());
        }
        let digit = |ch: char| ch.to_digit(10).map(|d| d as usize).ok_or_else(bad);
        let outer = Sign::parse(c[0])?;
        let z_index = digit(c[1])?;
        let inner = Sign::parse(c[2])?;
        let (j, k) = (digit(c[4])?, digit(c[5])?);
        let partition = Partition::containing(j, k).ok_or_else(bad)?;
        let id = NonlinearFamilyId::new(outer, z_index, inner, partition)?;
        if id.to_string() != s.trim() {
            return Err(bad());
        }
        Ok(id)
    }
}

/// One linear witness: a family id plus the angle `ψ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessSpec {
    pub id: NonlinearFamilyId,
    pub psi: f64,
}

/// Real linear combination of Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum(pub Vec<(f64, PauliString)>);

impl PauliSum {
    pub fn matrix(&self) -> Matrix8 {
        self.0
            .iter()
            .fold(Matrix8::zeros(), |acc, (c, s)| acc + s.matrix().scale(*c))
    }

    pub fn scale(&self, c: f64) -> PauliSum {
        PauliSum(self.0.iter().map(|&(w, s)| (c * w, s)).collect())
    }

    /// Adds `c` to the coefficient of `s`.
    pub fn add_term(&mut self, c: f64, s: PauliString) {
        match self.0.iter_mut().find(|(_, t)| *t == s) {
            Some(slot) => slot.0 += c,
            None => self.0.push((c, s)),
        }
    }
}

impl WitnessSpec {
    pub fn new(id: NonlinearFamilyId, psi: f64) -> Self {
        WitnessSpec { id, psi }
    }

    pub fn terms(&self) -> PauliSum {
        let obs = observables();
        let ((j, k), (l, m)) = self.id.partition.pairs();
        let s = self.id.inner.value();
        let (c, sn) = (self.psi.cos(), self.psi.sin());
        PauliSum(vec![
            (1.0, PauliString::IDENTITY),
            (self.id.outer.value(), obs[self.id.z_index - 1]),
            (c, obs[j - 1]),
            (s * c, obs[k - 1]),
            (sn, obs[l - 1]),
            (s * sn, obs[m - 1]),
        ])
    }
}

/// The witness `III − IZZ + cos ψ (XXX + XYY) + sin ψ (YXY + YYX)` whose
/// optimality is established through its product-state kernel.
pub fn canonical_witness(psi: f64) -> WitnessSpec {
    WitnessSpec::new(
        NonlinearFamilyId {
            outer: Sign::Minus,
            z_index: 3,
            inner: Sign::Plus,
            partition: Partition::P45_67,
        },
        psi,
    )
}

pub fn witness_matrix(w: &WitnessSpec) -> Matrix8 {
    w.terms().matrix()
}

pub fn expectation_r(w: &WitnessSpec, r: &RVector) -> f64 {
    let (a, b) = w.id.ab(r);
    w.id.offset(r) + w.psi.cos() * a + w.psi.sin() * b
}

/// `Tr[W ρ]` in closed form.
pub fn expectation(w: &WitnessSpec, p: &ProbVector) -> f64 {
    expectation_r(w, &r_from_p(p))
}

/// `Tr[W ρ]` by explicit matrices.
pub fn expectation_by_trace(w: &WitnessSpec, p: &ProbVector) -> f64 {
    witness_matrix(w).trace_product(density_from_p(p).matrix()).re
}

/// Angle minimizing the linear expectation: `atan2(b, a) + π` in
/// `[0, 2π)`, or 0 when `a = b = 0`.
pub fn optimal_psi(id: &NonlinearFamilyId, r: &RVector) -> f64 {
    let (a, b) = id.ab(r);
    if a == 0.0 && b == 0.0 {
        return 0.0;
    }
    let psi = b.atan2(a) + std::f64::consts::PI;
    let psi = psi.rem_euclid(std::f64::consts::TAU);
    if psi >= std::f64::consts::TAU {
        0.0
    } else {
        psi
    }
}

/// `1 ± r_i − √((r_j ± r_k)² + (r_l ± r_m)²)`
pub fn nonlinear_value(id: &NonlinearFamilyId, r: &RVector) -> f64 {
    let (a, b) = id.ab(r);
    id.offset(r) - a.hypot(b)
}

/// Most negative nonlinear value over `ids`.
pub fn best_nonlinear(ids: &[NonlinearFamilyId], r: &RVector) -> Option<(NonlinearFamilyId, f64)> {
    ids.iter()
        .map(|id| (*id, nonlinear_value(id, r)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Product-state minimum below which a family member is rejected.
pub const PRODUCT_MIN_TOL: f64 = 1e-6;
/// A witness needs an eigenvalue below this.
pub const NEGATIVE_EIG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EwCheck {
    pub spec: WitnessSpec,
    pub min_product: f64,
    pub min_eigenvalue: f64,
}

impl EwCheck {
    pub fn valid(&self) -> bool {
        self.min_product >= -PRODUCT_MIN_TOL && self.min_eigenvalue < -NEGATIVE_EIG_TOL
    }
}

pub fn check_ew(w: &WitnessSpec) -> EwCheck {
    let (min_product, _) = min_over_products(w);
    let min_eigenvalue =
        linalg::min_eigenvalue(&witness_matrix(w)).expect("witness matrices are Hermitian");
    EwCheck {
        spec: *w,
        min_product,
        min_eigenvalue,
    }
}

/// Nonnegative on all product states and not positive semidefinite.
pub fn validate_ew(w: &WitnessSpec) -> bool {
    check_ew(w).valid()
}

/// Angle at which the family is validated for use by the classifier.
pub const VALIDATION_PSI: f64 = std::f64::consts::FRAC_PI_3;

/// `check_ew` for all 36 ids at angle `psi`, in [`NonlinearFamilyId::all`]
/// order.
pub fn validation_table(psi: f64) -> Vec<EwCheck> {
    NonlinearFamilyId::all()
        .into_par_iter()
        .map(|id| check_ew(&id.with_psi(psi)))
        .collect()
}

/// Ids that pass [`validate_ew`] at [`VALIDATION_PSI`]; computed once.
pub fn validated_ids() -> &'static [NonlinearFamilyId] {
    static IDS: OnceLock<Vec<NonlinearFamilyId>> = OnceLock::new();
    IDS.get_or_init(|| {
        validation_table(VALIDATION_PSI)
            .into_iter()
            .filter(EwCheck::valid)
            .map(|c| c.spec.id)
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli_core::{ps, ProbVector};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, PI, TAU};

    fn id(s: &str) -> NonlinearFamilyId {
        s.parse().unwrap()
    }

    fn ghz_p() -> ProbVector {
        let mut p = [0.0; 8];
        p[0] = 1.0;
        ProbVector::new(p).unwrap()
    }

    #[test]
    fn thirty_six_distinct_ids_round_trip() {
        let all = NonlinearFamilyId::all();
        assert_eq!(all.len(), 36);
        let mut names: Vec<String> = all.iter().map(|i| i.to_string()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 36);
        for i in &all {
            assert_eq!(i.to_string().parse::<NonlinearFamilyId>().unwrap(), *i);
        }
        assert!("+4-(47)(56)".parse::<NonlinearFamilyId>().is_err());
        assert!("+1-(74)(56)".parse::<NonlinearFamilyId>().is_err());
        assert!("+1-(47)".parse::<NonlinearFamilyId>().is_err());
    }

    #[test]
    fn canonical_matrix_terms() {
        let psi: f64 = 0.7;
        let expected = PauliSum(vec![
            (1.0, ps("III")),
            (-1.0, ps("IZZ")),
            (psi.cos(), ps("XXX")),
            (psi.cos(), ps("XYY")),
            (psi.sin(), ps("YXY")),
            (psi.sin(), ps("YYX")),
        ]);
        let m = witness_matrix(&canonical_witness(psi));
        assert!(m.max_abs_diff(&expected.matrix()) < 1e-15);
    }

    #[test]
    fn psi_zero_drops_sine_terms() {
        for i in NonlinearFamilyId::all() {
            let w = i.with_psi(0.0);
            let ((j, k), _) = i.partition.pairs();
            let obs = observables();
            let want = Matrix8::identity()
                + obs[i.z_index - 1].matrix().scale(i.outer.value())
                + obs[j - 1].matrix()
                + obs[k - 1].matrix().scale(i.inner.value());
            assert!(witness_matrix(&w).max_abs_diff(&want) < 1e-15);
        }
    }

    #[test]
    fn every_member_has_negative_eigenvalue_at_quarter_pi() {
        for i in NonlinearFamilyId::all() {
            let lam = linalg::min_eigenvalue(&witness_matrix(&i.with_psi(FRAC_PI_4))).unwrap();
            assert!(lam < -1e-8, "{i}: {lam}");
        }
    }

    #[test]
    fn expectation_examples() {
        for i in NonlinearFamilyId::all() {
            let e = expectation(&i.with_psi(1.234), &ProbVector::uniform());
            assert!((e - 1.0).abs() < 1e-15);
        }
        let e = expectation(&id("+1+(45)(67)").with_psi(0.0), &ghz_p());
        assert!((e - 2.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let all = NonlinearFamilyId::all();
        for _ in 0..10_000 {
            let p = ProbVector::random(&mut rng);
            let w = all[rng.random_range(0..36)].with_psi(rng.random_range(0.0..TAU));
            assert!((expectation(&w, &p) - expectation_by_trace(&w, &p)).abs() < 1e-12);
        }
    }

    #[test]
    fn optimal_psi_examples() {
        let i = id("+1+(45)(67)");
        // (a, b) = (r4 + r5, r6 + r7)
        let r = RVector::new([0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((optimal_psi(&i, &r) - PI).abs() < 1e-15);
        let r = RVector::new([0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
        assert!((optimal_psi(&i, &r) - 1.5 * PI).abs() < 1e-15);
        assert_eq!(optimal_psi(&i, &RVector::zero()), 0.0);
    }

    #[test]
    fn nonlinear_examples() {
        let r0 = RVector::zero();
        for i in NonlinearFamilyId::all() {
            assert_eq!(nonlinear_value(&i, &r0), 1.0);
        }
        // GHZ: r₄ − r₇ = 2 and r₅ − r₆ = 0, so this member sits at zero;
        // the outer-minus members reach 1 − r₁ − 2 = −2.
        let r_ghz = r_from_p(&ghz_p());
        assert_eq!(nonlinear_value(&id("+1-(47)(56)"), &r_ghz), 0.0);
        let (_, best) = best_nonlinear(&NonlinearFamilyId::all(), &r_ghz).unwrap();
        assert_eq!(best, -2.0);
        let p = ProbVector::new([0.2, 0.0, 0.2, 0.0, 0.2, 0.1, 0.18, 0.12]).unwrap();
        let v = nonlinear_value(&id("+1-(47)(56)"), &r_from_p(&p));
        let want = 0.8 - (0.8f64 * 0.8 + 0.08 * 0.08).sqrt();
        assert!((v - want).abs() < 1e-12);
        assert!((v - (-0.003990)).abs() < 1e-6);
    }

    #[test]
    fn validation_covers_family() {
        let ids = validated_ids();
        assert_eq!(ids.len(), 36, "rejected members: {:?}", {
            let ok: Vec<_> = ids.to_vec();
            NonlinearFamilyId::all()
                .into_iter()
                .filter(|i| !ok.contains(i))
                .collect::<Vec<_>>()
        });
    }

    #[test]
    fn canonical_validates_and_psi_zero_has_negative_eigenvalue_anyway() {
        assert!(validate_ew(&canonical_witness(FRAC_PI_4)));
        // At ψ = 0 the member is still an entanglement witness, it is only
        // not optimal.
        let c = check_ew(&canonical_witness(0.0));
        assert!(c.min_product.abs() < 1e-6);
    }

    #[test]
    fn scaling_preserves_sign_and_validity() {
        let w = canonical_witness(1.0);
        let terms = w.terms();
        let scaled = terms.scale(3.5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let s = ProductState::random(&mut rng);
            let v = s.vector();
            let a = terms.matrix().expectation(&v);
            let b = scaled.matrix().expectation(&v);
            assert!((b - 3.5 * a).abs() < 1e-12);
        }
        let (m1, _) = min_over_sum(&terms);
        let (m2, _) = min_over_sum(&scaled);
        assert!((m2 - 3.5 * m1).abs() < 1e-8);
        let l1 = linalg::min_eigenvalue(&terms.matrix()).unwrap();
        let l2 = linalg::min_eigenvalue(&scaled.matrix()).unwrap();
        assert!((l2 - 3.5 * l1).abs() < 1e-10);
    }

    fn r_strategy() -> impl Strategy<Value = RVector> {
        proptest::array::uniform8(0.0f64..1.0).prop_filter_map("degenerate", |raw| {
            let x: [f64; 8] = raw.map(|u: f64| -(1.0 - u).ln());
            let s: f64 = x.iter().sum();
            if s <= 0.0 {
                return None;
            }
            Some(r_from_p(&ProbVector::new(x.map(|v| v / s)).ok()?))
        })
    }

    proptest! {
        #[test]
        fn optimal_angle_attains_envelope(r in r_strategy(), idx in 0usize..36) {
            let i = NonlinearFamilyId::all()[idx];
            let w = i.with_psi(optimal_psi(&i, &r));
            prop_assert!((expectation_r(&w, &r) - nonlinear_value(&i, &r)).abs() < 1e-12);
        }

        #[test]
        fn envelope_is_minimum_over_angle(r in r_strategy(), idx in 0usize..36) {
            let i = NonlinearFamilyId::all()[idx];
            let nl = nonlinear_value(&i, &r);
            let n = 10_000;
            let mut best = f64::INFINITY;
            let mut best_k = 0;
            for k in 0..n {
                let v = expectation_r(&i.with_psi(TAU * k as f64 / n as f64), &r);
                if v < best {
                    best = v;
                    best_k = k;
                }
            }
            prop_assert!(best >= nl - 1e-12);
            // golden-section polish around the best sample
            let h = TAU / n as f64;
            let f = |psi: f64| expectation_r(&i.with_psi(psi), &r);
            let (mut lo, mut hi) = (best_k as f64 * h - h, best_k as f64 * h + h);
            let g = (5f64.sqrt() - 1.0) / 2.0;
            for _ in 0..80 {
                let a = hi - g * (hi - lo);
                let b = lo + g * (hi - lo);
                if f(a) < f(b) { hi = b } else { lo = a }
            }
            prop_assert!((f(0.5 * (lo + hi)) - nl).abs() < 1e-8);
        }
    }
}
