use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::linalg::{Matrix8, C64, DIM, ONE, ZERO};

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> [[C64; 2]; 2] {
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, -i], [i, ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    /// `self · other = phase · result`.
    pub fn product(self, other: Pauli) -> (C64, Pauli) {
        use Pauli::*;
        let i = C64::new(0.0, 1.0);
        match (self, other) {
            (I, p) | (p, I) => (ONE, p),
            (a, b) if a == b => (ONE, I),
            (X, Y) => (i, Z),
            (Y, X) => (-i, Z),
            (Y, Z) => (i, X),
            (Z, Y) => (-i, X),
            (Z, X) => (i, Y),
            (X, Z) => (-i, Y),
            _ => unreachable!(),
        }
    }

    pub fn commutes(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Component of a Bloch vector `(x, y, z)` picked out by this label;
    /// `I` picks the constant 1.
    pub fn bloch_component(self, n: &[f64; 3]) -> f64 {
        match self {
            Pauli::I => 1.0,
            Pauli::X => n[0],
            Pauli::Y => n[1],
            Pauli::Z => n[2],
        }
    }
}

impl TryFrom<char> for Pauli {
    type Error = Error;
    fn try_from(c: char) -> Result<Self, Error> {
        match c.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(Error::Parse(format!("unknown Pauli label {c:?}"))),
        }
    }
}

/// Three-qubit Pauli string; `labels[0]` acts on qubit 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    pub labels: [Pauli; 3],
}

impl PauliString {
    pub const fn new(a: Pauli, b: Pauli, c: Pauli) -> Self {
        PauliString { labels: [a, b, c] }
    }

    pub const IDENTITY: PauliString = PauliString::new(Pauli::I, Pauli::I, Pauli::I);

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Kronecker product of the three single-qubit matrices, qubit 1 as the
    /// most significant index bit.
    pub fn matrix(&self) -> Matrix8 {
        let [a, b, c] = self.labels.map(Pauli::matrix);
        let mut m = Matrix8::zeros();
        for row in 0..DIM {
            let (r1, r2, r3) = (row >> 2, (row >> 1) & 1, row & 1);
            for col in 0..DIM {
                let (c1, c2, c3) = (col >> 2, (col >> 1) & 1, col & 1);
                m.0[row][col] = a[r1][c1] * b[r2][c2] * c[r3][c3];
            }
        }
        m
    }

    /// Label-wise product: `self · other = phase · result`.
    pub fn product(&self, other: &PauliString) -> (C64, PauliString) {
        let mut phase = ONE;
        let mut labels = [Pauli::I; 3];
        for q in 0..3 {
            let (ph, p) = self.labels[q].product(other.labels[q]);
            phase *= ph;
            labels[q] = p;
        }
        (phase, PauliString { labels })
    }

    pub fn commutes(&self, other: &PauliString) -> bool {
        let anti = (0..3)
            .filter(|&q| !self.labels[q].commutes(other.labels[q]))
            .count();
        anti % 2 == 0
    }

    /// Expectation in the product state with the given Bloch vectors.
    pub fn product_expectation(&self, bloch: &[[f64; 3]; 3]) -> f64 {
        (0..3)
            .map(|q| self.labels[q].bloch_component(&bloch[q]))
            .product()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.labels {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 3 {
            return Err(Error::Parse(format!(
                "Pauli string must have 3 labels, got {s:?}"
            )));
        }
        Ok(PauliString {
            labels: [
                Pauli::try_from(chars[0])?,
                Pauli::try_from(chars[1])?,
                Pauli::try_from(chars[2])?,
            ],
        })
    }
}

/// Parses a Pauli string literal known to be valid.
pub fn ps(s: &str) -> PauliString {
    s.parse().expect("invalid Pauli string literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_strings() -> Vec<PauliString> {
        let mut out = Vec::new();
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                for c in Pauli::ALL {
                    out.push(PauliString::new(a, b, c));
                }
            }
        }
        out
    }

    #[test]
    fn identity_string_is_identity_matrix() {
        assert_eq!(PauliString::IDENTITY.matrix(), Matrix8::identity());
    }

    #[test]
    fn zzi_is_expected_diagonal() {
        let expected = [1.0, 1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0];
        assert_eq!(ps("ZZI").matrix(), Matrix8::diagonal(expected));
    }

    #[test]
    fn xxx_is_antidiagonal_ones() {
        let m = ps("XXX").matrix();
        for i in 0..DIM {
            for j in 0..DIM {
                let want = if i + j == 7 { ONE } else { ZERO };
                assert_eq!(m.0[i][j], want);
            }
        }
    }

    #[test]
    fn hermitian_unitary_traceless() {
        for s in all_strings() {
            let m = s.matrix();
            assert!(m.is_hermitian(0.0));
            assert!((m * m.adjoint()).max_abs_diff(&Matrix8::identity()) < 1e-15);
            if !s.is_identity() {
                assert!(m.trace().norm() < 1e-15);
            }
        }
    }

    #[test]
    fn product_matches_matrix_product() {
        let all = all_strings();
        for a in &all {
            for b in &all {
                let (phase, c) = a.product(b);
                let lhs = a.matrix() * b.matrix();
                let mut rhs = c.matrix();
                for row in rhs.0.iter_mut() {
                    for x in row.iter_mut() {
                        *x *= phase;
                    }
                }
                assert!(lhs.max_abs_diff(&rhs) < 1e-15, "{a} * {b}");
                let comm = lhs - b.matrix() * a.matrix();
                let commuting = comm.max_abs_diff(&Matrix8::zeros()) < 1e-15;
                assert_eq!(commuting, a.commutes(b), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn display_round_trip() {
        for s in all_strings() {
            assert_eq!(s.to_string().parse::<PauliString>().unwrap(), s);
        }
        assert!("XY".parse::<PauliString>().is_err());
        assert!("XYQ".parse::<PauliString>().is_err());
    }

    proptest! {
        #[test]
        fn bloch_expectation_matches_matrix(
            idx in 0usize..64,
            t in proptest::array::uniform3(0.0f64..std::f64::consts::PI),
            f in proptest::array::uniform3(0.0f64..std::f64::consts::TAU),
        ) {
            let s = all_strings()[idx];
            let mut v = [ONE; DIM];
            let mut bloch = [[0.0; 3]; 3];
            for q in 0..3 {
                bloch[q] = [t[q].sin() * f[q].cos(), t[q].sin() * f[q].sin(), t[q].cos()];
            }
            for (k, amp) in v.iter_mut().enumerate() {
                for q in 0..3 {
                    let bit = (k >> (2 - q)) & 1;
                    *amp *= if bit == 0 {
                        C64::new((t[q] / 2.0).cos(), 0.0)
                    } else {
                        C64::from_polar((t[q] / 2.0).sin(), f[q])
                    };
                }
            }
            let direct = s.matrix().expectation(&v);
            prop_assert!((direct - s.product_expectation(&bloch)).abs() < 1e-12);
        }
    }
}
