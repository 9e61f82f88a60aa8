use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pauli_core::{p_from_r, ProbVector, RVector};

/// A state given either by its 8 probabilities or its 7 correlations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateInput {
    P([f64; 8]),
    R([f64; 7]),
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            f64::from_str(t).map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
        .collect()
}

impl StateInput {
    pub fn parse_p(s: &str) -> Result<Self> {
        let v = parse_list(s)?;
        let arr: [f64; 8] = v.as_slice().try_into().map_err(|_| Error::WrongLength {
            expected: 8,
            got: v.len(),
        })?;
        Ok(StateInput::P(arr))
    }

    pub fn parse_r(s: &str) -> Result<Self> {
        let v = parse_list(s)?;
        let arr: [f64; 7] = v.as_slice().try_into().map_err(|_| Error::WrongLength {
            expected: 7,
            got: v.len(),
        })?;
        Ok(StateInput::R(arr))
    }

    /// First non-empty line of a state file.
    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| Error::Parse(format!("{}: empty state file", path.display())))?;
        StateInput::parse_p(line)
    }

    pub fn to_prob(&self) -> Result<ProbVector> {
        match self {
            StateInput::P(p) => ProbVector::new(*p),
            StateInput::R(r) => p_from_r(&RVector::new(*r)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let p = StateInput::parse_p("1, 0,0,0,0,0,0,0").unwrap().to_prob().unwrap();
        assert_eq!(p.get(1), 1.0);
        let q = StateInput::parse_r("1,1,1,1,-1,-1,-1").unwrap().to_prob().unwrap();
        assert!((q.get(1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(StateInput::parse_p("0.5,0.5").is_err());
        assert!(StateInput::parse_p("a,b,c,d,e,f,g,h").is_err());
        let neg = StateInput::parse_p("-0.1,0.2,0.2,0.2,0.2,0.1,0.1,0.1").unwrap();
        assert!(neg.to_prob().is_err());
        let sum = StateInput::parse_p("0.2,0.2,0.2,0.2,0.2,0.1,0.1,0.1").unwrap();
        assert!(sum.to_prob().is_err());
    }
}
